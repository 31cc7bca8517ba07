#include "weil/rational.hpp"

#include "weil/error.hpp"

#include <algorithm>
#include <cctype>

namespace weil {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotSquarefree: return "NotSquarefree";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotCM: return "NotCM";
        case ErrorKind::BasisNotFound: return "BasisNotFound";
        case ErrorKind::ClosureFailure: return "ClosureFailure";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::PreconditionViolation: return "PreconditionViolation";
        case ErrorKind::EmbeddingInconsistency: return "EmbeddingInconsistency";
        case ErrorKind::InconsistencyDetected: return "InconsistencyDetected";
        case ErrorKind::RankDefect: return "RankDefect";
        case ErrorKind::IllConditioned: return "IllConditioned";
        case ErrorKind::ToleranceExceeded: return "ToleranceExceeded";
        case ErrorKind::NotAlternating: return "NotAlternating";
        case ErrorKind::CombinatorialBlowup: return "CombinatorialBlowup";
        case ErrorKind::SearchExhausted: return "SearchExhausted";
    }
    return "Unknown";
}

namespace {

bool is_integer_text(std::string_view s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

Integer parse_integer(std::string_view s) {
    std::string t(s);
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return Integer(t, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+') {
        throw Error(ErrorKind::InvalidInput, "malformed rational '" + std::string(text) + "'");
    }
    Integer d = parse_integer(den);
    if (d == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
    Rational q(parse_integer(num), d);
    q.canonicalize();
    return q;
}

Rational parse_decimal(std::string_view text) {
    if (text.find('/') != std::string_view::npos) return parse_rational(text);
    const auto bad = [&] { return Error(ErrorKind::InvalidInput, "malformed decimal '" + std::string(text) + "'"); };
    const size_t e = text.find_first_of("eE");
    std::string_view mant = text.substr(0, e);
    long exponent = 0;
    if (e != std::string_view::npos) {
        const std::string_view ex = text.substr(e + 1);
        if (!is_integer_text(ex) || ex.size() > 6) throw bad();
        exponent = std::stol(std::string(ex));
    }
    std::string digits;
    bool negative = false, seen_digit = false, seen_point = false;
    for (size_t i = 0; i < mant.size(); ++i) {
        const char c = mant[i];
        if (i == 0 && (c == '-' || c == '+')) {
            negative = c == '-';
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_point) --exponent;
        } else {
            throw bad();
        }
    }
    if (!seen_digit) throw bad();
    Rational q{Integer(digits, 10)};
    Integer ten = 1;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    q = exponent < 0 ? Rational(q / ten) : Rational(q * ten);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int sign(const Rational& q) { return sgn(q); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rational pow2(long k) {
    Integer p = 1;
    if (k >= 0) {
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
        return Rational(p);
    }
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(-k));
    return Rational(Integer(1), p);
}

Rational round_dyadic(const Rational& q, unsigned long bits) {
    if (q.get_den() == 1) return q;
    Rational scale = pow2(static_cast<long>(bits));
    Rational r(floor(q * scale + Rational(1, 2)), scale.get_num());
    r.canonicalize();
    return r;
}

Rational round_decimal(const Rational& q, unsigned long digits) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Rational r(floor(q * scale + Rational(1, 2)), scale);
    r.canonicalize();
    return r;
}

Rational sqrt_upper(const Rational& q, unsigned long bits) {
    // sqrt(q) <= ceil(sqrt(ceil(q * 4^bits))) / 2^bits
    Integer scaled = ceil(q * pow2(2 * static_cast<long>(bits)));
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    if (root * root < scaled) root += 1;
    Rational r(root, pow2(static_cast<long>(bits)).get_num());
    r.canonicalize();
    return r;
}

Rational sqrt_lower(const Rational& q, unsigned long bits) {
    Integer scaled = floor(q * pow2(2 * static_cast<long>(bits)));
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Rational r(root, pow2(static_cast<long>(bits)).get_num());
    r.canonicalize();
    return r;
}

Rational pow(const Rational& q, unsigned long e) {
    Rational r(1);
    Rational b = q;
    while (e != 0) {
        if (e & 1UL) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

double to_double(const Rational& q) { return q.get_d(); }

bool is_zero(const QVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace weil

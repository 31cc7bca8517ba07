#include "weil/poly.hpp"

#include "weil/error.hpp"

#include <sstream>

namespace weil {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }

Poly::Poly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    normalize();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::x() { return Poly({0, 1}); }

Poly Poly::monomial(const Rational& c, size_t k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return Poly(std::move(v));
}

void Poly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& Poly::leading() const {
    if (c_.empty()) throw Error(ErrorKind::InvalidInput, "leading coefficient of zero polynomial");
    return c_.back();
}

Poly Poly::monic() const {
    if (c_.empty()) return *this;
    Rational lc = c_.back();
    std::vector<Rational> v(c_);
    for (auto& a : v) a /= lc;
    return Poly(std::move(v));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> v(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * static_cast<long>(k);
    return Poly(std::move(v));
}

Rational Poly::eval(const Rational& t) const {
    Rational acc(0);
    for (size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
    return acc;
}

Poly Poly::compose(const Poly& g) const {
    Poly acc;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * g + Poly::constant(c_[k]);
    return acc;
}

Poly Poly::operator-() const {
    std::vector<Rational> v(c_);
    for (auto& a : v) a = -a;
    return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) + b.coeff(k);
    return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) - b.coeff(k);
    return Poly(std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
}

Poly operator*(const Rational& s, const Poly& a) {
    std::vector<Rational> v(a.c_);
    for (auto& x : v) x *= s;
    return Poly(std::move(v));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<Rational> rem(a.c_);
    std::vector<Rational> quo(a.c_.size() - b.c_.size() + 1);
    const Rational& lb = b.c_.back();
    const size_t db = b.c_.size() - 1;
    for (size_t k = rem.size(); k-- > db;) {
        if (rem[k] == 0) continue;
        Rational q = rem[k] / lb;
        quo[k - db] = q;
        for (size_t j = 0; j <= db; ++j) rem[k - db + j] -= q * b.c_[j];
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

std::string Poly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = c_.size(); k-- > 0;) {
        const Rational& a = c_[k];
        if (a == 0) continue;
        Rational mag = weil::abs(a);
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = (mag == 1) && k > 0;
        if (!unit) os << weil::to_string(mag);
        if (k > 0) {
            if (!unit) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

ExtendedGcd extended_gcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(1), s1;
    Poly t0, t1 = Poly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = Poly::divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        Poly t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational inv = 1 / r0.leading();
    return {inv * r0, inv * s0, inv * t0};
}

bool is_squarefree(const Poly& f) {
    if (f.is_zero()) return false;
    return gcd(f, f.derivative()).degree() == 0 || f.degree() == 0;
}

Poly squarefree_part(const Poly& f) {
    if (f.degree() <= 0) return f.monic();
    return (f / gcd(f, f.derivative())).monic();
}

Poly from_roots(const std::vector<Rational>& roots) {
    Poly p = Poly::constant(1);
    for (const auto& r : roots) p = p * Poly(std::vector<Rational>{-r, Rational(1)});
    return p;
}

}  // namespace weil

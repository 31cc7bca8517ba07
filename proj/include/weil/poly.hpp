#pragma once

#include "weil/rational.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace weil {

/// Univariate polynomial over Q, coefficients in ascending degree with
/// trailing zeros stripped. The zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    Poly(std::initializer_list<long> coeffs);

    static Poly constant(const Rational& c);
    static Poly x();
    static Poly monomial(const Rational& c, size_t k);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    /// Coefficient of x^k; zero past the degree.
    Rational coeff(size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    const Rational& leading() const;

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    Poly monic() const;
    Poly derivative() const;

    Rational eval(const Rational& t) const;

    /// f(g(x)).
    Poly compose(const Poly& g) const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& s, const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Quotient and remainder; throws DivisionByZero for b = 0.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

    std::string to_string(const std::string& var = "x") const;

private:
    void normalize();
    std::vector<Rational> c_;
};

/// Monic gcd (zero if both inputs are zero).
Poly gcd(Poly a, Poly b);

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b), g monic.
struct ExtendedGcd {
    Poly g, s, t;
};
ExtendedGcd extended_gcd(const Poly& a, const Poly& b);

/// True iff gcd(f, f') is constant (f nonzero).
bool is_squarefree(const Poly& f);

/// f / gcd(f, f'), made monic.
Poly squarefree_part(const Poly& f);

/// f(x) = prod (x - root) for the sequence of roots.
Poly from_roots(const std::vector<Rational>& roots);

}  // namespace weil

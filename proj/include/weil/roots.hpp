#pragma once

#include "weil/complex.hpp"
#include "weil/poly.hpp"

#include <optional>
#include <vector>

namespace weil {

/// Sturm chain of a squarefree polynomial; counts distinct real roots.
class SturmSequence {
public:
    /// Throws Error(NotSquarefree) if gcd(f, f') is non-constant.
    explicit SturmSequence(const Poly& f);

    /// Number of real roots in (a, b]; nullopt stands for -inf / +inf.
    size_t count(const std::optional<Rational>& a, const std::optional<Rational>& b) const;
    size_t count_all() const { return count(std::nullopt, std::nullopt); }

private:
    size_t variations_at(const Rational& t) const;
    size_t variations_at_infinity(bool positive) const;
    std::vector<Poly> chain_;
};

/// Number of real roots of f in (a, b]; nullopt means an infinite endpoint.
size_t sturm_count(const Poly& f, const std::optional<Rational>& a = std::nullopt,
                   const std::optional<Rational>& b = std::nullopt);

/// Power of two strictly greater than the modulus of every complex root.
Rational root_bound(const Poly& f);

/// Rectangle containing exactly one root. Real roots get a degenerate
/// imaginary extent [0, 0]; non-real boxes never meet the real axis.
struct RootBox {
    Rational re_lo, re_hi, im_lo, im_hi;
    bool is_real = false;

    QComplex center() const { return {(re_lo + re_hi) / 2, (im_lo + im_hi) / 2}; }
    ComplexInterval as_interval() const { return {{re_lo, re_hi}, {im_lo, im_hi}}; }
    bool contains(const RootBox& inner) const;
    bool intersects(const RootBox& other) const;
    Rational side() const;
};

struct RootIsolation {
    std::vector<RootBox> boxes;       // canonical order: Re ascending, then Im ascending
    std::vector<size_t> conjugate;    // index of the conjugate box; real boxes map to themselves

    size_t real_count() const;
};

/// Certified isolation of all complex roots of a squarefree f into
/// pairwise disjoint boxes of side <= width. Refining with width/2 yields
/// boxes nested in these, in the same order. Throws NotSquarefree.
RootIsolation isolate_roots(const Poly& f, const Rational& width);

/// Box centers of isolate_roots(f, 10^-digits): rational approximations
/// of the roots in canonical order, each within 10^-digits.
std::vector<QComplex> root_approximations(const Poly& f, unsigned long digits);

/// Sign (-1, 0, +1) of q at the real root isolated by (lo, hi] of squarefree m.
/// Refines the interval by bisection until q has no root in it.
int sign_at_real_root(const Poly& q, const Poly& m, Rational lo, Rational hi);

}  // namespace weil

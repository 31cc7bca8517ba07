#pragma once

#include "weil/poly.hpp"
#include "weil/rational.hpp"

namespace weil {

/// Exact complex number with rational parts.
struct QComplex {
    Rational re;
    Rational im;

    QComplex() = default;
    QComplex(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

    QComplex conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }
    bool is_zero() const { return re == 0 && im == 0; }

    friend QComplex operator+(const QComplex& a, const QComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend QComplex operator-(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }
    friend QComplex operator*(const QComplex& a, const QComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend QComplex operator*(const Rational& s, const QComplex& a) { return {s * a.re, s * a.im}; }
    friend QComplex operator/(const QComplex& a, const QComplex& b);
    friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
    QComplex& operator+=(const QComplex& b) {
        re += b.re;
        im += b.im;
        return *this;
    }
    QComplex& operator-=(const QComplex& b) {
        re -= b.re;
        im -= b.im;
        return *this;
    }
};

QComplex round_dyadic(const QComplex& z, unsigned long bits);
QComplex round_decimal(const QComplex& z, unsigned long digits);

/// Horner evaluation of a rational polynomial at a complex point.
QComplex eval(const Poly& f, const QComplex& z);

/// Closed rational interval [lo, hi].
struct Interval {
    Rational lo;
    Rational hi;

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const Interval& o) const { return !(hi < o.lo || o.hi < lo); }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }

    friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
    friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
    friend Interval operator*(const Interval& a, const Interval& b);
};

/// Axis-parallel complex rectangle with interval arithmetic.
struct ComplexInterval {
    Interval re;
    Interval im;

    friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    bool intersects(const ComplexInterval& o) const { return re.intersects(o.re) && im.intersects(o.im); }
};

/// Enclosure of f over a rectangle (interval Horner scheme).
ComplexInterval eval(const Poly& f, const ComplexInterval& box);

}  // namespace weil

#include "weil/complex.hpp"

#include "weil/error.hpp"

#include <algorithm>

namespace weil {

QComplex operator/(const QComplex& a, const QComplex& b) {
    Rational n = b.norm2();
    if (n == 0) throw Error(ErrorKind::DivisionByZero, "complex division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

QComplex round_dyadic(const QComplex& z, unsigned long bits) {
    return {round_dyadic(z.re, bits), round_dyadic(z.im, bits)};
}

QComplex round_decimal(const QComplex& z, unsigned long digits) {
    return {round_decimal(z.re, digits), round_decimal(z.im, digits)};
}

QComplex eval(const Poly& f, const QComplex& z) {
    QComplex acc;
    const auto& c = f.coeffs();
    for (size_t k = c.size(); k-- > 0;) {
        acc = acc * z;
        acc.re += c[k];
    }
    return acc;
}

Interval operator*(const Interval& a, const Interval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

ComplexInterval eval(const Poly& f, const ComplexInterval& box) {
    ComplexInterval acc{{0, 0}, {0, 0}};
    const auto& c = f.coeffs();
    for (size_t k = c.size(); k-- > 0;) {
        acc = acc * box;
        acc.re.lo += c[k];
        acc.re.hi += c[k];
    }
    return acc;
}

}  // namespace weil

#include "doctest.h"

#include "weil/error.hpp"
#include "weil/poly.hpp"
#include "weil/qmatrix.hpp"

#include <random>

using namespace weil;

namespace {

QMatrix random_matrix(std::mt19937_64& rng, size_t r, size_t c, int spread, double zero_prob) {
    std::uniform_int_distribution<int> num(-spread, spread), den(1, 5);
    std::bernoulli_distribution zero(zero_prob);
    QMatrix m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            if (!zero(rng)) {
                m(i, j) = Rational(num(rng), den(rng));
                m(i, j).canonicalize();
            }
    return m;
}

// Plain Gaussian elimination over Q, kept deliberately naive.
size_t naive_rank(QMatrix m) {
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c) / m(r, c);
            for (size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

Rational cofactor_det(const QMatrix& m) {
    const size_t n = m.rows();
    if (n == 1) return m(0, 0);
    Rational d(0);
    for (size_t j = 0; j < n; ++j) {
        QMatrix minor(n - 1, n - 1);
        for (size_t i = 1; i < n; ++i)
            for (size_t k = 0, kk = 0; k < n; ++k)
                if (k != j) minor(i - 1, kk++) = m(i, k);
        Rational t = m(0, j) * cofactor_det(minor);
        d += (j % 2 ? -t : t);
    }
    return d;
}

}  // namespace

TEST_CASE("rational parsing and rounding") {
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(to_string(parse_rational("10/4")) == "5/2");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK(round_decimal(Rational(2, 3), 3) == Rational(667, 1000));
    Rational s = sqrt_upper(2, 40);
    CHECK(s * s >= 2);
    CHECK((s - pow2(-40)) * (s - pow2(-40)) < 2);
    CHECK(pow2(-3) == Rational(1, 8));
}

TEST_CASE("polynomial arithmetic") {
    Poly f{-1, 0, 1};  // x^2 - 1
    Poly g{1, 1};
    CHECK(f / g == Poly{-1, 1});
    CHECK((f % g).is_zero());
    CHECK(gcd(f, Poly{1, 2, 1}) == g);
    auto e = extended_gcd(Poly{1, 0, 1}, Poly{0, 1});
    CHECK(e.s * Poly{1, 0, 1} + e.t * Poly{0, 1} == e.g);
    CHECK(e.g.degree() == 0);
    CHECK_FALSE(is_squarefree(Poly{1, 2, 1}));
    CHECK(squarefree_part(Poly{0, 0, 1}) == Poly::x());
    CHECK(Poly{1, 1}.compose(Poly{0, 0, 1}) == Poly{1, 0, 1});
    CHECK_THROWS_AS(Poly::divmod(f, Poly()), Error);
}

TEST_CASE("bareiss rank, kernel and determinant against naive elimination") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        size_t r = 1 + rng() % 6, c = 1 + rng() % 7;
        QMatrix m = random_matrix(rng, r, c, 3, trial % 2 ? 0.6 : 0.2);
        // force dependent rows sometimes
        if (r > 2 && trial % 3 == 0)
            for (size_t j = 0; j < c; ++j) m(r - 1, j) = 2 * m(0, j) - m(1, j);
        size_t rk = rank(m);
        CHECK(rk == naive_rank(m));
        auto ker = kernel_basis(m);
        CHECK(rk + ker.size() == c);
        for (const auto& k : ker) CHECK(is_zero(m * k));
        if (r == c) {
            CHECK(determinant(m) == cofactor_det(m));
            if (rk == r) CHECK(inverse(m) * m == QMatrix::identity(r));
            else CHECK_THROWS_AS(inverse(m), Error);
        }
    }
}

TEST_CASE("solve and span membership") {
    QMatrix m = QMatrix::from_rows({{1, 2}, {3, 4}, {5, 6}}, 2);
    auto x = solve(m, {5, 11, 17});
    REQUIRE(x);
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 2);
    CHECK_FALSE(solve(m, {1, 0, 0}));
    auto c = span_membership({{1, 0, 1}, {0, 1, 1}}, {2, 3, 5});
    REQUIRE(c);
    CHECK((*c)[1] == 3);
    CHECK_FALSE(span_membership({{1, 0, 1}}, {0, 1, 0}));
    CHECK_THROWS_AS(span_membership({{1, 0}}, {1, 0, 0}), Error);
}

TEST_CASE("subspace intersection") {
    auto i = subspace_intersection({{1, 0, 0}, {0, 1, 0}}, {{0, 1, 0}, {0, 0, 1}});
    REQUIRE(i.size() == 1);
    CHECK(i[0][0] == 0);
    CHECK(i[0][2] == 0);
    CHECK(i[0][1] != 0);
}

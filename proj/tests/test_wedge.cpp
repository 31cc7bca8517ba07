#include "doctest.h"

#include "weil/error.hpp"
#include "weil/number_field.hpp"
#include "weil/wedge.hpp"

#include <random>

using namespace weil;

namespace {

Poly P(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return Poly(v);
}

// `copies` copies of the regular representation of Q[x]/(f).
FRepresentation regular(const Poly& f, size_t copies) {
    const FieldPtr F = NumberField::make(f);
    const QMatrix m = FieldElement::gen(F).mult_matrix();
    const size_t d = F->degree();
    QMatrix A(d * copies, d * copies);
    for (size_t c = 0; c < copies; ++c)
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) A(c * d + i, c * d + j) = m(i, j);
    return {d * copies, A, f};
}

QVector vec(std::initializer_list<long> c) {
    QVector v;
    for (long x : c) v.emplace_back(x);
    return v;
}

// Alternating form on Q^n from a matrix, on increasing pairs.
QVector two_form(const QMatrix& m) {
    const Subsets pairs(m.rows(), 2);
    QVector v(pairs.size());
    for (size_t t = 0; t < pairs.size(); ++t) v[t] = m(pairs[t][0], pairs[t][1]);
    return v;
}

QMatrix standard_symplectic(size_t n) {
    QMatrix phi(n, n);
    for (size_t j = 0; j + 1 < n; j += 2) {
        phi(j, j + 1) = 1;
        phi(j + 1, j) = -1;
    }
    return phi;
}

QVector scaled(const Rational& c, QVector v) {
    for (auto& x : v) x *= c;
    return v;
}

const Rational kTol(1, 100000000);

}  // namespace

TEST_CASE("subsets rank and unrank agree") {
    for (size_t n : {1u, 4u, 7u})
        for (size_t r = 0; r <= n; ++r) {
            Subsets s(n, r);
            CHECK(s.size() == binomial(n, r));
            for (size_t i = 0; i < s.size(); ++i) CHECK(s.index(s[i]) == i);
        }
    CHECK(binomial(8, 4) == 70);
    CHECK(binomial(200, 100) == SIZE_MAX);
}

TEST_CASE("W_F for F = Q is the determinant") {
    FRepresentation rep{4, QMatrix(4, 4), P({0, 1})};
    const auto ws = weil_subspace(rep);
    CHECK(ws.r == 4);
    CHECK(ws.wedge_dim == 1);
    CHECK(ws.rank == 1);
    CHECK(ws.basis[0] == vec({1}));
}

TEST_CASE("W_F for deg F = N is all linear forms") {
    const auto rep = regular(P({1, 1, 1, 1, 1}), 1);
    const auto ws = weil_subspace(rep);
    CHECK(ws.r == 1);
    CHECK(ws.rank == 4);
    CHECK(ws.wedge_dim == 4);
}

TEST_CASE("W_F for two copies of Q(i) has dimension 2 in the 6-dim square") {
    const auto rep = regular(P({1, 0, 1}), 2);
    const auto ws = weil_subspace(rep);
    CHECK(ws.r == 2);
    CHECK(ws.wedge_dim == 6);
    CHECK(ws.rank == 2);
    // independent oracle: every form in W_F is invariant under A up to i^2 = -1
    const Subsets pairs(4, 2);
    for (const auto& w : ws.basis) CHECK(pullback(w, pairs, rep.f_action) == scaled(-1, w));
}

TEST_CASE("dimension of W_F equals [F:Q] on the representation matrix") {
    const std::vector<Poly> fields = {P({0, 1}), P({1, 0, 1}), P({-2, 0, 1}), P({1, 0, 0, 0, 1}), P({2, 0, -4, 0, 1})};
    for (const auto& f : fields)
        for (size_t N : {2u, 4u, 8u}) {
            const size_t d = static_cast<size_t>(f.degree());
            if (N % d != 0) continue;
            const auto rep = d == 1 ? FRepresentation{N, QMatrix(N, N), f} : regular(f, N / d);
            CHECK(weil_subspace(rep).rank == d);
        }
}

TEST_CASE("scaling law on power basis, rationals and random elements") {
    const auto rep = regular(P({1, 0, 1}), 2);
    const auto ws = weil_subspace(rep);
    CHECK(fstar_scaling_check(rep, ws, vec({1, 0})));
    CHECK(fstar_scaling_check(rep, ws, vec({2, 0})));
    CHECK(fstar_scaling_check(rep, ws, vec({0, 1})));
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> dist(-9, 9);
    for (int t = 0; t < 5; ++t) {
        QVector f{parse_rational(std::to_string(dist(rng)) + "/" + std::to_string(1 + rng() % 4)), Rational(dist(rng))};
        if (is_zero(f)) continue;
        CHECK(fstar_scaling_check(rep, ws, f));
    }
    CHECK_THROWS_AS(fstar_scaling_check(rep, ws, vec({0, 0})), Error);
    // f = 2 multiplies an r-form by 2^r
    const Subsets pairs(4, 2);
    CHECK(pullback(ws.basis[0], pairs, Rational(2) * QMatrix::identity(4)) == scaled(4, ws.basis[0]));
}

TEST_CASE("complex structure of a CM elliptic curve is the action of i") {
    const auto rep = regular(P({1, 0, 1}), 1);
    const auto cs = build_complex_structure(rep, {1, 0}, 50, kTol);
    // canonical order lists -i first, so n = (0,1) puts +i where x acts as i
    REQUIRE(cs.lambdas[0].im < 0);
    CHECK(cs.j == Rational(-1) * rep.f_action);
    CHECK(build_complex_structure(rep, {0, 1}, 50, kTol).j == rep.f_action);
    CHECK(cs.residual_square == 0);
    CHECK_THROWS_AS(build_complex_structure(rep, {1, 1}, 50, kTol), Error);
    CHECK_THROWS_AS(build_complex_structure(rep, {1, 0}, 20, kTol), Error);
}

TEST_CASE("bidegrees from the induced action on r-forms") {
    SUBCASE("elliptic curve is not Hodge") {
        const auto rep = regular(P({1, 0, 1}), 1);
        const auto ws = weil_subspace(rep);
        const auto h = hodge_type_oracle(rep, ws, build_complex_structure(rep, {1, 0}, 50, kTol), kTol);
        CHECK_FALSE(h.is_all_hodge);
        CHECK(h.components[0].p == 1);
        CHECK(h.components[0].q == 0);
        CHECK(h.components[1].p == 0);
        CHECK(h.components[1].q == 1);
    }
    SUBCASE("deg F = 4, n = (1,1,1,1) is Hodge") {
        const auto rep = regular(P({1, 0, 0, 0, 1}), 2);
        const auto ws = weil_subspace(rep);
        const auto cs = build_complex_structure(rep, {1, 1, 1, 1}, 50, kTol);
        CHECK(cs.residual_square < kTol);
        CHECK(cs.residual_commute < kTol);
        const auto h = hodge_type_oracle(rep, ws, cs, kTol);
        CHECK(h.is_all_hodge);
        for (const auto& c : h.components) {
            CHECK(c.p == 1);
            CHECK(c.q == 1);
        }
        CHECK(h.max_residual < 1e-8);
    }
    SUBCASE("a pair with n = (2,0) is not Hodge") {
        const auto rep = regular(P({1, 0, 1}), 2);
        const auto ws = weil_subspace(rep);
        const auto h = hodge_type_oracle(rep, ws, build_complex_structure(rep, {2, 0}, 50, kTol), kTol);
        CHECK_FALSE(h.is_all_hodge);
        CHECK(h.components[0].p == 2);
        CHECK(h.components[1].q == 2);
    }
    SUBCASE("real embeddings give (r/2, r/2)") {
        const auto rep = regular(P({-2, 0, 1}), 2);
        const auto ws = weil_subspace(rep);
        const auto h = hodge_type_oracle(rep, ws, build_complex_structure(rep, {1, 1}, 50, kTol), kTol);
        CHECK(h.is_all_hodge);
    }
}

TEST_CASE("divisor forms and wedge products") {
    const FRepresentation rep{4, QMatrix(4, 4), P({0, 1})};
    const QMatrix phi = standard_symplectic(4);
    const auto forms = divisor_forms(rep, phi, {QMatrix::identity(4)});
    CHECK(forms[0] == two_form(phi));
    QMatrix bad(4, 4);
    bad(0, 2) = 1;
    CHECK_THROWS_AS(divisor_forms(rep, phi, {bad}), Error);
    CHECK_THROWS_AS(divisor_forms(rep, QMatrix::identity(4), {}), Error);

    // e0* ^ e1* evaluated on (e0, e1) is 1; 1-forms anticommute
    const QVector a = vec({1, 0, 0, 0}), b = vec({0, 1, 0, 0});
    const QVector ab = wedge(a, 1, b, 1, 4), ba = wedge(b, 1, a, 1, 4);
    CHECK(ab[0] == 1);
    CHECK(ba == scaled(-1, ab));
    // phi ^ phi = 2 (e01 ^ e23) on Q^4
    const QVector top = wedge(forms[0], 2, forms[0], 2, 4);
    CHECK(top == vec({2}));
}

TEST_CASE("witness for the top power") {
    const FRepresentation rep{4, QMatrix(4, 4), P({0, 1})};
    const auto ws = weil_subspace(rep);
    const auto forms = divisor_forms(rep, standard_symplectic(4), {QMatrix::identity(4)});
    const auto w = decomposability_witness(ws, 4, forms);
    CHECK(w.found);
    CHECK(w.coefficients[0] == QVector{Rational(1, 2)});
    CHECK_THROWS_AS(decomposability_witness(ws, 4, forms, 0), Error);
}

TEST_CASE("pullback agrees with the plain sum over minors") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> dist(-3, 3);
    for (int shape = 0; shape < 3; ++shape) {
        // dense, block-diagonal with interleaved blocks, and a permutation-like matrix
        QMatrix T(6, 6);
        for (size_t i = 0; i < 6; ++i)
            for (size_t j = 0; j < 6; ++j) {
                const bool keep = shape == 0 || (shape == 1 && i % 2 == j % 2) || (shape == 2 && (i + 1) % 6 == j);
                if (keep) T(i, j) = Rational(dist(rng)) / (1 + rng() % 3);
            }
        for (size_t r : {1u, 2u, 3u}) {
            const Subsets t(6, r);
            QVector form(t.size());
            for (auto& x : form) x = dist(rng);
            QVector naive(t.size());
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = 0; j < t.size(); ++j) {
                    QMatrix m(r, r);
                    for (size_t a = 0; a < r; ++a)
                        for (size_t b = 0; b < r; ++b) m(a, b) = T(t[j][a], t[i][b]);
                    naive[i] += form[j] * determinant(m);
                }
            CHECK(pullback(form, t, T) == naive);
        }
    }
}

TEST_CASE("sampled scaling law") {
    const auto rep = regular(P({1, 0, 0, 0, 1}), 3);
    CHECK(fstar_scaling_sampled(rep, vec({1, 2, 0, -1}), 5, 3));
    CHECK(fstar_scaling_sampled(rep, vec({0, 0, 0, 1}), 5, 4));
    CHECK_THROWS_AS(fstar_scaling_sampled(rep, vec({0, 0, 0, 0}), 1, 0), Error);
    const auto ws = weil_subspace(rep);
    CHECK(fstar_scaling_check(rep, ws, vec({1, 2, 0, -1})));
}

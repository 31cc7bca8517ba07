#include "doctest.h"

#include "weil/cm.hpp"
#include "weil/error.hpp"

#include <complex>
#include <random>

using namespace weil;

namespace {

FieldPtr field(std::initializer_list<long> c) { return NumberField::make(Poly(c)); }

FieldElement elem(const FieldPtr& K, std::initializer_list<long> c) {
    QVector v(K->degree());
    size_t i = 0;
    for (long x : c) v[i++] = x;
    return {K, v};
}

std::vector<std::complex<double>> roots_double(const NumberField& K) {
    std::vector<std::complex<double>> out;
    for (const auto& z : root_approximations(K.min_poly(), 20)) out.emplace_back(z.re.get_d(), z.im.get_d());
    return out;
}

std::complex<double> eval_double(const QVector& c, std::complex<double> z) {
    std::complex<double> acc = 0;
    for (size_t k = c.size(); k-- > 0;) acc = acc * z + c[k].get_d();
    return acc;
}

// Q(i, sqrt 2) = Q(zeta_8): x^4 + 1 with i = x^2 and sqrt 2 = x - x^3
struct Zeta8 {
    FieldPtr K = field({1, 0, 0, 0, 1});
    EmbeddedSubfield qi{elem(K, {0, 0, 1}), Poly{1, 0, 1}};
    EmbeddedSubfield qsqrt2{elem(K, {0, 1, 0, -1}), Poly{-2, 0, 1}};
};

}  // namespace

TEST_CASE("element arithmetic") {
    auto K = field({1, 0, 1});
    auto x = FieldElement::gen(K);
    CHECK(x * x == FieldElement::rational(K, -1));
    CHECK(x.inverse() == -x);
    CHECK(x + FieldElement::zero(K) == x);
    CHECK_THROWS_AS(FieldElement::zero(K).inverse(), Error);
    auto L = field({-2, 0, 1});
    CHECK_THROWS_AS(x * FieldElement::gen(L), Error);
    CHECK_THROWS_AS(NumberField::make(Poly{1, 2, 1}), Error);
    CHECK_THROWS_AS(NumberField::make(Poly{1, 2}), Error);  // 2x + 1 not monic
}

TEST_CASE("absolute traces") {
    auto K = field({-2, 0, 1});
    CHECK(trace_abs(FieldElement::gen(K)) == 0);
    CHECK(trace_abs(FieldElement::one(K)) == 2);
    auto Z5 = field({1, 1, 1, 1, 1});
    CHECK(trace_abs(FieldElement::gen(Z5)) == -1);
    // linearity on random elements
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        auto a = elem(Z5, {long(rng() % 7) - 3, long(rng() % 7) - 3, 1, long(rng() % 5)});
        auto b = elem(Z5, {long(rng() % 7) - 3, 2, long(rng() % 7) - 3, 0});
        CHECK(trace_abs(a + b) == trace_abs(a) + trace_abs(b));
        CHECK(trace_abs(Rational(3, 7) * a) == Rational(3, 7) * trace_abs(a));
        if (!a.is_zero()) CHECK(a * a.inverse() == FieldElement::one(Z5));
    }
}

TEST_CASE("minimal polynomial of an element") {
    Zeta8 z;
    CHECK(minimal_polynomial(z.qsqrt2.gen_image()) == Poly{-2, 0, 1});
    CHECK(minimal_polynomial(FieldElement::rational(z.K, 5)) == Poly{-5, 1});
    CHECK(minimal_polynomial(FieldElement::gen(z.K)) == z.K->min_poly());
}

TEST_CASE("embedded subfields and f-bases") {
    Zeta8 z;
    CHECK_THROWS_AS(EmbeddedSubfield(elem(z.K, {0, 1}), Poly{-2, 0, 1}), Error);
    CHECK(f_basis(EmbeddedSubfield::whole(z.K)).size() == 1);
    CHECK(f_basis(z.qsqrt2).size() == 2);
    CHECK(f_basis(EmbeddedSubfield::rationals(z.K)).size() == 4);
    auto q = EmbeddedSubfield::rationals(z.K);
    CHECK(q.degree() == 1);
    CHECK(q.preimage(FieldElement::rational(z.K, 3)));
    CHECK_FALSE(q.preimage(FieldElement::gen(z.K)));
}

TEST_CASE("relative traces") {
    Zeta8 z;
    auto a = elem(z.K, {1, 2, -1, 3});
    CHECK(relative_trace(EmbeddedSubfield::whole(z.K), a).coords() == a.coords());
    auto i_img = z.qi.gen_image();
    CHECK(relative_trace(z.qsqrt2, i_img).is_zero());

    auto Q2 = field({-2, 0, 1});
    auto t = relative_trace(EmbeddedSubfield::rationals(Q2), elem(Q2, {5, 7}));
    CHECK(t.coords()[0] == 10);

    // tower transitivity and independence of the basis order
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        auto b = elem(z.K, {long(rng() % 9) - 4, long(rng() % 9) - 4, long(rng() % 9) - 4, long(rng() % 9) - 4});
        for (const auto* F : {&z.qi, &z.qsqrt2}) {
            auto tr = relative_trace(*F, b);
            CHECK(trace_abs(tr) == trace_abs(b));
            CHECK(relative_trace(*F, b, {3, 2, 1, 0}) == tr);
        }
    }
}

TEST_CASE("relative trace agrees with summed embeddings") {
    Zeta8 z;
    auto a = elem(z.K, {2, -1, 3, 1});
    auto tr = relative_trace(z.qsqrt2, a);
    auto restr = restrict_embeddings(z.qsqrt2);
    auto kr = roots_double(*z.K);
    auto fr = roots_double(*z.qsqrt2.field());
    std::vector<std::complex<double>> sums(fr.size());
    for (size_t k = 0; k < kr.size(); ++k) sums[restr[k]] += eval_double(a.coords(), kr[k]);
    for (size_t s = 0; s < fr.size(); ++s) CHECK(std::abs(sums[s] - eval_double(tr.coords(), fr[s])) < 1e-9);
}

TEST_CASE("total reality") {
    CHECK(is_totally_real(*field({-3, 0, 1})));
    CHECK_FALSE(is_totally_real(*field({5, 0, 1})));
    CHECK_FALSE(is_totally_real(*field({-1, 0, 0, -1, 1})));
    CHECK(field({-1, 0, 0, -1, 1})->real_embedding_count() == 2);
}

TEST_CASE("cm verification") {
    auto Qi = field({1, 0, 1});
    CMStructure qi{FieldElement::one(Qi), FieldElement::gen(Qi)};
    auto v = verify_cm(qi);
    CHECK(v.e0 == 1);
    CHECK(v.conj(FieldElement::gen(Qi)) == -FieldElement::gen(Qi));
    CHECK(minus_part_basis(qi).size() == 1);

    auto Q2 = field({-2, 0, 1});
    CHECK_THROWS_AS(verify_cm({FieldElement::one(Q2), FieldElement::gen(Q2)}), Error);

    auto Z5 = field({1, 1, 1, 1, 1});
    auto x = FieldElement::gen(Z5);
    auto xinv = x.inverse();
    CMStructure z5{x + xinv, x - xinv};
    auto w = verify_cm(z5);
    CHECK(w.e0 == 2);
    CHECK(w.conj(x) == xinv);
    CHECK(w.conjugation * w.conjugation == QMatrix::identity(4));
    for (size_t k = 0; k < 4; ++k) CHECK(w.embedding_conjugation[w.embedding_conjugation[k]] == k);
    auto minus = minus_part_basis(z5);
    CHECK(minus.size() == 2);
    for (const auto& m : minus) CHECK(w.conj(m) == -m);
    // c is multiplicative on basis pairs
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) {
            auto a = FieldElement::gen(Z5).pow(i), b = FieldElement::gen(Z5).pow(j);
            CHECK(w.conj(a * b) == w.conj(a) * w.conj(b));
        }

    // eta = 1 does not generate E over E_0
    CHECK_THROWS_AS(verify_cm({FieldElement::one(Qi), FieldElement::one(Qi)}), Error);
}

TEST_CASE("containment and intersection") {
    Zeta8 z;
    CHECK(subfield_contains(z.qi, z.qi));
    CHECK_FALSE(subfield_contains(z.qsqrt2, z.qi));
    CHECK(subfield_contains(EmbeddedSubfield::whole(z.K), z.qi));
    auto r = subfield_intersection(z.qi, z.qsqrt2);
    CHECK(r.basis.size() == 1);
    CHECK(r.totally_real);
    auto same = subfield_intersection(z.qi, z.qi);
    CHECK(same.basis.size() == 2);
    CHECK_FALSE(same.totally_real);

    // conjugation restricted to E cap F, with E = Q(i) embedded in K
    auto Qi = field({1, 0, 1});
    auto cm = verify_cm({FieldElement::one(Qi), FieldElement::gen(Qi)});
    EmbeddedSubfield embed_e{z.qi.gen_image(), Qi->min_poly()};
    auto with_c = subfield_intersection(embed_e, z.qsqrt2, {&cm, &embed_e});
    REQUIRE(with_c.conjugation_fixed);
    CHECK(*with_c.conjugation_fixed == with_c.totally_real);
    auto whole_e = subfield_intersection(embed_e, EmbeddedSubfield::whole(z.K), {&cm, &embed_e});
    REQUIRE(whole_e.conjugation_fixed);
    CHECK_FALSE(*whole_e.conjugation_fixed);
    CHECK(*whole_e.conjugation_fixed == whole_e.totally_real);
}

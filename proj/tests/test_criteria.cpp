#include "doctest.h"

#include "weil/criteria.hpp"
#include "weil/error.hpp"
#include "weil/forge.hpp"
#include "weil/tables.hpp"
#include "weil/wedge.hpp"

using namespace weil;

namespace {

FieldElement el(const FieldPtr& K, std::initializer_list<long> c) { return FieldElement::from_poly(K, Poly(c)); }

SimpleFactorDatum factor(const std::string& name, AlbertType t, long dim_y, long m, long d, const FieldPtr& E,
                         std::optional<CMStructure> cm, std::vector<CompositumComponent> comps, std::vector<long> n) {
    SimpleFactorDatum f;
    f.name = name;
    f.albert_type = t;
    f.dim_y = dim_y;
    f.power = m;
    f.d = d;
    f.center = E;
    f.cm = std::move(cm);
    f.compositum = std::move(comps);
    f.multiplicities = std::move(n);
    return f;
}

AbelianVarietyDatum single(const FieldPtr& F, SimpleFactorDatum f) {
    AbelianVarietyDatum d;
    d.field_f = F;
    d.factors.push_back(std::move(f));
    return d;
}

QVector unit_vector(size_t n, size_t i) {
    QVector v(n);
    v[i] = 1;
    return v;
}

FieldPtr Qi() { return NumberField::make(Poly{1, 0, 1}); }
CMStructure cm_qi(const FieldPtr& E) { return {FieldElement::zero(E), FieldElement::gen(E)}; }

// Q(sqrt2, sqrt3) = Q(alpha), alpha = sqrt2 + sqrt3.
struct Biquad {
    FieldPtr K = NumberField::make(Poly{1, 0, -10, 0, 1});
    FieldElement sqrt2 = Rational(1, 2) * el(K, {0, -9, 0, 1});
    FieldElement sqrt3 = Rational(1, 2) * el(K, {0, 11, 0, -1});
};

// type III, m = 1, E = Q(sqrt 2), with F given inside K.
AbelianVarietyDatum type3_m1(const FieldPtr& K, const EmbeddedSubfield& ee, const EmbeddedSubfield& ef, long rank) {
    const FieldPtr E = ee.field();
    const long deg_f = static_cast<long>(ef.degree());
    const long r = 2 * 4 / deg_f;
    return single(ef.field(), factor("Y", AlbertType::III, 4, 1, 2, E, std::nullopt, {{K, ee, ef, rank}},
                                     std::vector<long>(static_cast<size_t>(deg_f), r / 2)));
}

}  // namespace

TEST_CASE("validation examples") {
    const Fixture w = weil_fourfold();
    CHECK(validate(w.datum).ok());
    CHECK(validate(w.datum).g == 4);
    CHECK(validate(w.datum).r == 4);

    AbelianVarietyDatum bad = w.datum;
    bad.factors[0].multiplicities = {3, 2};
    const ValidationReport vr = validate(bad);
    CHECK_FALSE(vr.ok());
    bool located = false;
    for (const auto& v : vr.violations) located |= v.path.find("multiplicities") != std::string::npos;
    CHECK(located);
    CHECK_THROWS_AS(require_valid(bad), Error);

    // type III with a non-totally-real centre
    const FieldPtr E = Qi();
    AbelianVarietyDatum t3 = single(E, factor("Y", AlbertType::III, 4, 1, 2, E, std::nullopt,
                                              {{E, EmbeddedSubfield::whole(E), EmbeddedSubfield::whole(E), 4}}, {2, 2}));
    CHECK_FALSE(validate(t3).ok());

    // validate is idempotent
    CHECK(validate(w.datum).summary() == validate(w.datum).summary());
}

TEST_CASE("total multiplicities add over factors") {
    const FieldPtr E = Qi();
    CompositumComponent c1{E, EmbeddedSubfield::whole(E), EmbeddedSubfield::whole(E), 1};
    CompositumComponent c3{E, EmbeddedSubfield::whole(E), EmbeddedSubfield::whole(E), 3};
    AbelianVarietyDatum d;
    d.field_f = E;
    d.factors.push_back(factor("A", AlbertType::IV, 1, 1, 1, E, cm_qi(E), {c1}, {1, 0}));
    d.factors.push_back(factor("B", AlbertType::IV, 3, 1, 1, E, cm_qi(E), {c3}, {1, 2}));
    const ValidationReport vr = validate(d);
    REQUIRE(vr.ok());
    CHECK(total_multiplicities(d) == std::vector<long>{2, 2});
    CHECK(vr.r == vr.r_i[0] + vr.r_i[1]);
    CHECK(total_multiplicities(product_odd_ratios().datum) == std::vector<long>{1, 1});
}

TEST_CASE("Hodge test") {
    CHECK(hodge_test({2, 2}, {1, 0}).all_hodge);
    const HodgeVerdict h = hodge_test({3, 1}, {1, 0});
    CHECK_FALSE(h.all_hodge);
    CHECK(h.witness == size_t(0));
    CHECK(classify(type1_surface().datum).hodge.all_hodge);
}

TEST_CASE("classification of the named examples") {
    for (const auto& name : fixture_names()) {
        const Fixture fx = make_fixture(name);
        std::string why;
        CHECK_MESSAGE(self_test(fx, &why), name << ": " << why);
    }
    const ClassificationReport w = classify(weil_fourfold().datum);
    CHECK(w.overall == Overall::Exceptional);
    REQUIRE(w.factors[0].verdict);
    CHECK(w.factors[0].verdict->case_tag == CaseTag::TypeIVd1m1);
    CHECK(w.factors[0].verdict->f_contained == false);
    CHECK(std::string(w.tate_note).size() > 0);

    const ClassificationReport p = classify(product_odd_ratios().datum);
    CHECK(p.overall == Overall::Exceptional);
    CHECK_FALSE(p.factors[0].hodge.all_hodge);
    CHECK_FALSE(p.factors[1].hodge.all_hodge);
}

TEST_CASE("classification does not depend on the thread count") {
    const Fixture fx = remark_iv_triple(2);
    const ClassificationReport a = classify(fx.datum, 1), b = classify(fx.datum, 4);
    CHECK(a.overall == b.overall);
    CHECK(a.factors.size() == b.factors.size());
    CHECK(a.factors[0].verdict->theta->matrix == b.factors[0].verdict->theta->matrix);
}

TEST_CASE("type III parity case") {
    // D quaternion over Q, m = 2, F totally real quartic: 2 * 2 * 1 / 4 = 1 is odd
    const FieldPtr Q = NumberField::make(Poly{0, 1});
    const Biquad bq;
    const FieldPtr F = bq.K;
    CompositumComponent comp{F, EmbeddedSubfield::rationals(F), EmbeddedSubfield::whole(F), 2};
    const AbelianVarietyDatum d = single(F, factor("Y", AlbertType::III, 2, 2, 2, Q, std::nullopt, {comp}, {1, 1, 1, 1}));
    REQUIRE(validate(d).ok());
    const FactorVerdict v = classify_factor(d.factors[0], F, d.factors[0].compositum);
    CHECK(v.case_tag == CaseTag::TypeIIIParity);
    CHECK(v.parity_value == 1);
    CHECK(v.kind == FactorKind::Exceptional);
}

TEST_CASE("type III with m = 1 uses containment of F in E") {
    const Biquad bq;
    const EmbeddedSubfield ee(bq.sqrt2, Poly{-2, 0, 1});
    SUBCASE("F = Q(sqrt 3) not inside E") {
        const AbelianVarietyDatum d = type3_m1(bq.K, ee, EmbeddedSubfield(bq.sqrt3, Poly{-3, 0, 1}), 2);
        REQUIRE(validate(d).ok());
        const FactorVerdict v = classify_factor(d.factors[0], d.field_f, d.factors[0].compositum);
        CHECK(v.kind == FactorKind::Exceptional);
        CHECK(v.literal_reading_differs);
        // an isomorphic presentation of F (1 + sqrt 3, root of x^2 - 2x - 2) gives the same verdict
        const AbelianVarietyDatum d2 =
            type3_m1(bq.K, ee, EmbeddedSubfield(FieldElement::one(bq.K) + bq.sqrt3, Poly{-2, -2, 1}), 2);
        REQUIRE(validate(d2).ok());
        CHECK(classify_factor(d2.factors[0], d2.field_f, d2.factors[0].compositum).kind == FactorKind::Exceptional);
    }
    SUBCASE("F = E is decomposable under both readings") {
        const FieldPtr E = NumberField::make(Poly{-2, 0, 1});
        const AbelianVarietyDatum d = type3_m1(E, EmbeddedSubfield::whole(E), EmbeddedSubfield::whole(E), 4);
        REQUIRE(validate(d).ok());
        const FactorVerdict v = classify_factor(d.factors[0], E, d.factors[0].compositum);
        CHECK(v.kind == FactorKind::Decomposable);
        CHECK(v.f_equal == true);
        CHECK_FALSE(v.literal_reading_differs);
    }
}

TEST_CASE("type IV d = m = 1 with F = Q is decomposable") {
    const FieldPtr E = Qi();
    const FieldPtr Q = NumberField::make(Poly{0, 1});
    CompositumComponent comp{E, EmbeddedSubfield::whole(E), EmbeddedSubfield::rationals(E), 4};
    const AbelianVarietyDatum d = single(Q, factor("X", AlbertType::IV, 4, 1, 1, E, cm_qi(E), {comp}, {4}));
    REQUIRE(validate(d).ok());
    CHECK(classify(d).overall == Overall::Decomposable);
}

TEST_CASE("types I and II are decomposable") {
    CHECK(classify(type1_surface().datum).factors[0].verdict->case_tag == CaseTag::TypeI);
    const FieldPtr Q = NumberField::make(Poly{0, 1});
    CompositumComponent comp{Q, EmbeddedSubfield::whole(Q), EmbeddedSubfield::whole(Q), 4};
    const AbelianVarietyDatum d = single(Q, factor("Y", AlbertType::II, 2, 1, 2, Q, std::nullopt, {comp}, {2}));
    REQUIRE(validate(d).ok());
    const ClassificationReport rep = classify(d);
    CHECK(rep.overall == Overall::Decomposable);
    CHECK(rep.factors[0].verdict->case_tag == CaseTag::TypeII);
}

TEST_CASE("theta map") {
    // K = Q(zeta_8) with i = x^2 and sqrt 2 = x - x^3
    const FieldPtr K = NumberField::make(Poly{1, 0, 0, 0, 1});
    const FieldPtr E = Qi();
    const EmbeddedSubfield ee(el(K, {0, 0, 1}), E->min_poly());
    SUBCASE("Q(i) and Q(sqrt 2): theta = 0") {
        const EmbeddedSubfield ef(el(K, {0, 1, 0, -1}), Poly{-2, 0, 1});
        const AbelianVarietyDatum d =
            single(ef.field(), factor("Y", AlbertType::IV, 4, 2, 1, E, cm_qi(E), {{K, ee, ef, 4}}, {4, 4}));
        REQUIRE(validate(d).ok());
        const ThetaResult th = theta_map(d.factors[0], d.field_f, d.factors[0].compositum);
        CHECK(th.is_zero);
        CHECK(classify(d).overall == Overall::Decomposable);
        const RemarkReport r2 = check_remark_ii(d.factors[0], d.field_f, d.factors[0].compositum);
        CHECK(r2.holds);
        CHECK(r2.intersection_totally_real);
        const RemarkReport r3 = check_remark_iii(d.factors[0], d.field_f, d.factors[0].compositum, true);
        CHECK(r3.holds);
        CHECK(r3.theta_zero);
    }
    SUBCASE("E = F = K = Q(i): theta(i) = r i") {
        for (long rank : {1, 3}) {
            const SimpleFactorDatum f = factor("Y", AlbertType::IV, rank, 1, 1, E, cm_qi(E),
                                               {{E, EmbeddedSubfield::whole(E), EmbeddedSubfield::whole(E), rank}}, {});
            const ThetaResult th = theta_map(f, E, f.compositum);
            CHECK_FALSE(th.is_zero);
            CHECK(th.matrix(0, 0) == 0);
            CHECK(th.matrix(1, 0) == rank);
        }
    }
    SUBCASE("theta is Q-linear on the minus part") {
        const Fixture fx = remark_iv_triple(2);
        const SimpleFactorDatum& f = fx.datum.factors[0];
        const ThetaResult th = theta_map(f, fx.datum.field_f, f.compositum);
        const auto minus = minus_part_basis(*f.cm);
        REQUIRE(minus.size() == 2);
        const auto& comp = f.compositum[0];
        const FieldElement alpha = Rational(3) * minus[0] + Rational(-5, 2) * minus[1];
        const FieldElement img = comp.embed_e.image(FieldElement(comp.embed_e.field(), alpha.coords()));
        const FieldElement tr = relative_trace(comp.embed_f, img);
        for (size_t i = 0; i < th.matrix.rows(); ++i)
            CHECK(comp.module_rank * tr.coords()[i] == 3 * th.matrix(i, 0) + Rational(-5, 2) * th.matrix(i, 1));
    }
}

TEST_CASE("remark-iv triple: theta non-zero with E cap F totally real") {
    for (int n : {2, 3}) {
        const Fixture fx = remark_iv_triple(n);
        REQUIRE(fx.certificate);
        CHECK(fx.certificate->all_passed());
        const SimpleFactorDatum& f = fx.datum.factors[0];
        const RemarkReport r2 = check_remark_ii(f, fx.datum.field_f, f.compositum);
        CHECK(r2.holds);
        CHECK_FALSE(r2.theta_zero);
        CHECK(r2.intersection_conjugation_fixed);
        const RemarkReport r3 = check_remark_iii(f, fx.datum.field_f, f.compositum, false);
        CHECK_FALSE(r3.applicable);
    }
    CHECK_THROWS_AS(remark_iv_triple(4), Error);
}

TEST_CASE("remark-iv search is reproducible and seed-dependent") {
    const Fixture a = remark_iv_triple(2, 0), b = remark_iv_triple(2, 0);
    CHECK(a.certificate->parameters == b.certificate->parameters);
    const Fixture c = remark_iv_triple(2, 12345);
    CHECK(c.certificate->all_passed());
    CHECK(c.certificate->seed == 12345);
}

TEST_CASE("compositum configurations satisfy both implications") {
    for (size_t i = 0; i < 64; ++i) {
        const CompositumConfiguration cfg = compositum_configuration(i);
        const SimpleFactorDatum& f = cfg.datum.factors[0];
        CHECK_NOTHROW(check_remark_ii(f, cfg.datum.field_f, f.compositum));
        CHECK_NOTHROW(check_remark_iii(f, cfg.datum.field_f, f.compositum, cfg.galois));
    }
}

TEST_CASE("monotonicity in F") {
    const Fixture w = weil_fourfold();
    const FieldPtr E = w.datum.field_f;
    const FieldPtr Q = NumberField::make(Poly{0, 1});
    CompositumComponent comp{E, EmbeddedSubfield::whole(E), EmbeddedSubfield::rationals(E), 4};
    const AbelianVarietyDatum dq = single(Q, factor("X", AlbertType::IV, 4, 1, 1, E, cm_qi(E), {comp}, {4}));
    const MonotonicityReport m = check_monotonicity(dq, w.datum, EmbeddedSubfield::rationals(E));
    CHECK(m.hodge_f);
    CHECK(m.hodge_fprime);
    CHECK(m.decomposable_f);
    CHECK_FALSE(m.decomposable_fprime);
    const MonotonicityReport same = check_monotonicity(w.datum, w.datum, EmbeddedSubfield::whole(E));
    CHECK(same.hodge_implication);
    CHECK(same.decomposability_implication);
    AbelianVarietyDatum wrong = dq;
    wrong.factors[0].multiplicities = {3};
    CHECK_THROWS_AS(check_monotonicity(wrong, w.datum, EmbeddedSubfield::rationals(E)), Error);
}

TEST_CASE("centre and algebra of the symmetric elements") {
    auto row = [](AlbertType t, long m, long d) {
        const BStructure b = b_structure(t, m, d);
        return b.k_b + " | " + b.b;
    };
    CHECK(row(AlbertType::I, 1, 1) == "E | M_m(E)");
    CHECK(row(AlbertType::I, 3, 1) == "E | M_m(E)");
    CHECK(row(AlbertType::II, 1, 2) == "E | M_m(D)");
    CHECK(row(AlbertType::II, 2, 2) == "E | M_m(D)");
    CHECK(row(AlbertType::III, 1, 2) == "E | E");
    CHECK(row(AlbertType::III, 2, 2) == "E | M_m(D)");
    CHECK(row(AlbertType::IV, 1, 1) == "E_0 | E_0");
    CHECK(row(AlbertType::IV, 2, 1) == "E | M_m(E)");
    CHECK(row(AlbertType::IV, 1, 2) == "E | M_m(D)");
    CHECK(row(AlbertType::IV, 3, 3) == "E | M_m(D)");
}

TEST_CASE("complexified divisor group") {
    // (type, m, d, g, e, e0) -> group, k formula, k, representation, pi_0 order, torus rank
    struct Row {
        AlbertType t;
        long m, d, g, e, e0;
        const char* group;
        const char* formula;
        long k;
        const char* rep;
        long pi0;
        bool torus;
    };
    const Row rows[] = {
        {AlbertType::I, 1, 1, 2, 2, 2, "Sp_{2k}", "2g/me", 2, "St", 1, false},
        {AlbertType::II, 1, 2, 4, 1, 1, "Sp_{2k}", "g/2me", 2, "St+St", 1, false},
        {AlbertType::III, 1, 2, 4, 2, 2, "Sp_{2k}", "2g/e", 4, "St", 1, false},
        {AlbertType::III, 2, 2, 8, 2, 2, "O_{2k}", "g/2me", 1, "St+St", 4, false},
        {AlbertType::IV, 1, 1, 4, 2, 1, "Sp_{2k}", "2g/e_0", 8, "St", 1, false},
        {AlbertType::IV, 1, 2, 8, 4, 2, "GL_{dk}", "2g/med^2", 1, "St+St^v", 1, true},
        {AlbertType::IV, 2, 1, 8, 2, 1, "GL_{dk}", "2g/med^2", 4, "St+St^v", 1, true},
    };
    for (const Row& r : rows) {
        const GdivStructure s = gdiv_structure(r.t, r.m, r.d, r.g, r.e, r.e0);
        CHECK(s.group == r.group);
        CHECK(s.k_formula == r.formula);
        CHECK(s.k == r.k);
        CHECK(s.representation == r.rep);
        CHECK(s.component_group_order == r.pi0);
        CHECK(s.center_is_torus == r.torus);
        CHECK(s.center_torus_rank == (r.torus ? r.e0 : 0));
        CHECK(s.tau_factors == r.e0);
        // dim V_Y split over the e_0 real places of E_0
        CHECK(s.rep_dim_per_tau * s.tau_factors == 2 * r.g / r.m);
    }
    CHECK_THROWS_AS(gdiv_structure(AlbertType::I, 1, 1, 3, 4, 4), Error);
}

TEST_CASE("divisor witness on the named examples") {
    SUBCASE("type I surface: W_F is spanned by divisor forms") {
        const WitnessModel wm = witness_model(type1_surface().datum);
        const WeilSubspace ws = weil_subspace(wm.rep);
        const auto forms = divisor_forms(wm.rep, wm.polarization, wm.symmetric);
        CHECK(rank(QMatrix::from_rows(forms, forms[0].size())) == 2);
        const WitnessResult w = decomposability_witness(ws, wm.rep.dim_v, forms);
        REQUIRE(w.found);
        for (size_t b = 0; b < ws.basis.size(); ++b) {
            QVector acc(ws.wedge_dim);
            for (size_t k = 0; k < w.monomials.size(); ++k)
                for (size_t t = 0; t < acc.size(); ++t) acc[t] += w.coefficients[b][k] * forms[w.monomials[k][0]][t];
            CHECK(acc == ws.basis[b]);
        }
    }
    SUBCASE("Weil fourfold: rank separation") {
        const WitnessModel wm = witness_model(weil_fourfold().datum);
        const WeilSubspace ws = weil_subspace(wm.rep);
        CHECK(ws.rank == 2);
        const WitnessResult w = decomposability_witness(ws, wm.rep.dim_v, divisor_forms(wm.rep, wm.polarization, wm.symmetric));
        CHECK_FALSE(w.found);
        CHECK(w.augmented_rank > w.products_rank);
    }
    CHECK_THROWS_AS(witness_model(remark_v_datum().datum), Error);
}

TEST_CASE("Weil fourfold bidegrees are (2,2)") {
    const Fixture fx = weil_fourfold();
    const FRepresentation rep = FRepresentation::from_datum(fx.datum);
    const WeilSubspace ws = weil_subspace(rep);
    const Rational tol(1, 100000000);
    const auto cs = build_complex_structure(rep, total_multiplicities(fx.datum), 50, tol);
    const HodgeTypeResult h = hodge_type_oracle(rep, ws, cs, tol);
    CHECK(h.is_all_hodge);
    for (const auto& c : h.components) {
        CHECK(c.p == 2);
        CHECK(c.q == 2);
    }
    for (const auto& name : {"weil-fourfold", "type1-surface", "product-odd", "remark-v"}) {
        const Fixture f = make_fixture(name);
        const FRepresentation r = FRepresentation::from_datum(f.datum);
        const WeilSubspace w = weil_subspace(r);
        for (size_t i = 0; i < r.degree(); ++i) CHECK(fstar_scaling_check(r, w, unit_vector(r.degree(), i)));
    }
}

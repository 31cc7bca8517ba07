#include "weil/forge.hpp"

#include "weil/error.hpp"
#include "weil/wedge.hpp"

#include <algorithm>
#include <random>

namespace weil {

namespace {

Poly P(std::initializer_list<long> c) { return Poly(c); }

QVector unit(size_t n, size_t i) {
    QVector v(n);
    v[i] = 1;
    return v;
}

FieldElement elem(const FieldPtr& K, std::initializer_list<long> c) { return FieldElement::from_poly(K, Poly(c)); }

bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

std::string join_poly(const Poly& p) { return p.to_string(); }

// ---------------------------------------------------------------- mod p

using PolyModP = std::vector<long>;

long mod(long a, long p) { return ((a % p) + p) % p; }

long pow_mod(long b, long e, long p) {
    long r = 1;
    b = mod(b, p);
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

long inv_mod(long a, long p) { return pow_mod(a, p - 2, p); }

void trim(PolyModP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::optional<PolyModP> reduce_mod(const Poly& f, long p) {
    PolyModP out;
    for (const auto& c : f.coeffs()) {
        const Integer den = c.get_den();
        if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) return std::nullopt;
        const long num = mpz_fdiv_ui(c.get_num().get_mpz_t(), static_cast<unsigned long>(p));
        const long d = mpz_fdiv_ui(den.get_mpz_t(), static_cast<unsigned long>(p));
        out.push_back(num * inv_mod(d, p) % p);
    }
    trim(out);
    return out;
}

PolyModP rem_mod(PolyModP a, const PolyModP& b, long p) {
    const long inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const long q = a.back() * inv % p;
        const size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] = mod(a[shift + i] - q * b[i], p);
        trim(a);
    }
    return a;
}

size_t gcd_degree_mod(PolyModP a, PolyModP b, long p) {
    while (!b.empty()) {
        PolyModP r = rem_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? 0 : a.size() - 1;
}

long eval_mod(const PolyModP& f, long x, long p) {
    long acc = 0;
    for (size_t k = f.size(); k-- > 0;) acc = (acc * x + f[k]) % p;
    return acc;
}

std::vector<long> primes_up_to(long n) {
    std::vector<bool> sieve(static_cast<size_t>(n + 1), true);
    std::vector<long> out;
    for (long i = 2; i <= n; ++i) {
        if (!sieve[static_cast<size_t>(i)]) continue;
        out.push_back(i);
        for (long j = i * i; j <= n; j += i) sieve[static_cast<size_t>(j)] = false;
    }
    return out;
}

// ---------------------------------------------------------------- algebras

// Field generated by z acting on a commutative etale algebra; `one` is the
// unit. to_field sends algebra coordinates to the power basis of the field.
struct PrimitiveField {
    FieldPtr field;
    QMatrix to_field;
};

std::optional<PrimitiveField> primitive_field(const QMatrix& z_op, const QVector& one) {
    const size_t D = one.size();
    std::vector<QVector> krylov{one};
    for (size_t i = 1; i <= D; ++i) krylov.push_back(z_op * krylov.back());
    const QVector top = krylov.back();
    krylov.pop_back();
    const QMatrix K = QMatrix::from_columns(krylov, D);
    if (rank(K) != D) return std::nullopt;
    const auto a = solve(K, top);
    std::vector<Rational> c(D + 1);
    for (size_t i = 0; i < D; ++i) c[i] = -(*a)[i];
    c[D] = 1;
    return PrimitiveField{NumberField::make(Poly(c)), inverse(K)};
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
    QMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0)
                for (size_t k = 0; k < b.rows(); ++k)
                    for (size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

// A (x) B with z = x + c y; images of the two generators in the field.
struct TensorField {
    PrimitiveField pf;
    FieldElement a_gen, b_gen;
    long shift;
};

TensorField tensor_field(const FieldPtr& A, const FieldPtr& B) {
    const size_t da = A->degree(), db = B->degree();
    const QMatrix X = kron(FieldElement::gen(A).mult_matrix(), QMatrix::identity(db));
    const QMatrix Y = kron(QMatrix::identity(da), FieldElement::gen(B).mult_matrix());
    const QVector one = unit(da * db, 0);
    for (long c = 1; c <= 50; ++c) {
        auto pf = primitive_field(X + Rational(c) * Y, one);
        if (!pf) continue;
        const FieldPtr K = pf->field;
        FieldElement a(K, pf->to_field * (X * one)), b(K, pf->to_field * (Y * one));
        return {*pf, a, b, c};
    }
    throw Error(ErrorKind::SearchExhausted, "no primitive element x + c y with c <= 50");
}

// E[t_1..t_k]/(t_j^2 - y_j); coordinates (S, i) -> S * e + i.
struct Multiquadratic {
    FieldPtr E;
    std::vector<FieldElement> ys;
    size_t dim() const { return E->degree() << ys.size(); }

    QMatrix x_op() const {
        const size_t e = E->degree();
        QMatrix op(dim(), dim());
        const QMatrix m = FieldElement::gen(E).mult_matrix();
        for (size_t S = 0; S < (size_t(1) << ys.size()); ++S)
            for (size_t i = 0; i < e; ++i)
                for (size_t j = 0; j < e; ++j) op(S * e + i, S * e + j) = m(i, j);
        return op;
    }

    QMatrix t_op(size_t j) const {
        const size_t e = E->degree();
        QMatrix op(dim(), dim());
        const QMatrix my = ys[j].mult_matrix();
        for (size_t S = 0; S < (size_t(1) << ys.size()); ++S) {
            const size_t T = S ^ (size_t(1) << j);
            const bool has = (S >> j) & 1;
            for (size_t a = 0; a < e; ++a)
                for (size_t b = 0; b < e; ++b) op(T * e + a, S * e + b) = has ? my(a, b) : Rational(a == b ? 1 : 0);
        }
        return op;
    }
};

// ---------------------------------------------------------------- data

CMStructure cm_of(const FieldElement& real_gen, const FieldElement& eta) { return CMStructure{real_gen, eta}; }

SimpleFactorDatum type_iv_factor(const std::string& name, const FieldPtr& E, const CMStructure& cm, long d, long m,
                                 long dim_y, std::vector<CompositumComponent> comps, std::vector<long> n) {
    SimpleFactorDatum f;
    f.name = name;
    f.albert_type = AlbertType::IV;
    f.dim_y = dim_y;
    f.power = m;
    f.d = d;
    f.center = E;
    f.cm = cm;
    f.compositum = std::move(comps);
    f.multiplicities = std::move(n);
    return f;
}

std::vector<long> balanced(size_t deg_f, long r) { return std::vector<long>(deg_f, r / 2); }

QVector add(QVector a, const QVector& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

CertificateCheck check(const std::string& name, bool ok, const std::string& detail = {}) { return {name, ok, detail}; }

std::string describe(const LocalNonSquare& c) {
    return "p=" + std::to_string(c.prime) + ", x0=" + std::to_string(c.root) + ", alpha(x0)=" + std::to_string(c.value) +
           " is a non-residue";
}

// Deterministic visiting order of a candidate pool: natural for seed 0,
// otherwise a Fisher-Yates shuffle driven by mt19937_64.
std::vector<size_t> visit_order(size_t n, uint64_t seed) {
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    if (seed == 0) return order;
    std::mt19937_64 rng(seed);
    for (size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    return order;
}

}  // namespace

bool SearchCertificate::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CertificateCheck& c) { return c.passed; });
}

std::optional<LocalNonSquare> certify_nonsquare(const Poly& f, const QVector& alpha, long prime_bound) {
    for (const auto& c : f.coeffs())
        if (c.get_den() != 1) throw Error(ErrorKind::InvalidInput, "certify_nonsquare needs an integral polynomial");
    if (!f.is_monic()) throw Error(ErrorKind::InvalidInput, "certify_nonsquare needs a monic polynomial");
    for (long p : primes_up_to(prime_bound)) {
        if (p == 2) continue;
        const auto fp = reduce_mod(f, p);
        const auto ap = reduce_mod(Poly(alpha), p);
        if (!fp || !ap) continue;
        PolyModP dfp;
        for (size_t k = 1; k < fp->size(); ++k) dfp.push_back(static_cast<long>(k) % p * (*fp)[k] % p);
        trim(dfp);
        if (dfp.empty() || gcd_degree_mod(*fp, dfp, p) != 0) continue;  // p divides disc(f)
        for (long x0 = 0; x0 < p; ++x0) {
            if (eval_mod(*fp, x0, p) != 0) continue;
            const long v = eval_mod(*ap, x0, p);
            if (v != 0 && pow_mod(v, (p - 1) / 2, p) == p - 1) return LocalNonSquare{p, x0, v};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- fixtures

Fixture weil_fourfold() {
    const FieldPtr E = NumberField::make(P({1, 0, 1}));
    const CMStructure cm = cm_of(FieldElement::zero(E), FieldElement::gen(E));
    CompositumComponent comp{E, EmbeddedSubfield::whole(E), EmbeddedSubfield::whole(E), 4};
    Fixture fx;
    fx.name = "weil-fourfold";
    fx.datum.field_f = E;
    fx.datum.factors.push_back(type_iv_factor("X", E, cm, 1, 1, 4, {comp}, {2, 2}));
    fx.expected = {Overall::Exceptional, true, {true}, {FactorKind::Exceptional}, std::nullopt, false};
    fx.notes = {"simple CM fourfold with E = F = Q(i) acting with multiplicities (2,2)",
                "F is not inside E_0 = Q, so the classes are exceptional; the generic divisor ring misses W_F"};
    require_valid(fx.datum);
    return fx;
}

Fixture product_odd_ratios() {
    const FieldPtr E = NumberField::make(P({1, 0, 1}));
    const CMStructure cm = cm_of(FieldElement::zero(E), FieldElement::gen(E));
    CompositumComponent comp{E, EmbeddedSubfield::whole(E), EmbeddedSubfield::whole(E), 1};
    Fixture fx;
    fx.name = "product-odd";
    fx.datum.field_f = E;
    fx.datum.factors.push_back(type_iv_factor("Y1", E, cm, 1, 1, 1, {comp}, {1, 0}));
    fx.datum.factors.push_back(type_iv_factor("Y2", E, cm, 1, 1, 1, {comp}, {0, 1}));
    fx.expected = {Overall::Exceptional, true, {false, false}, {std::nullopt, std::nullopt}, std::nullopt, std::nullopt};
    fx.notes = {"two CM elliptic curves with Q(i) acting through complex-conjugate CM types",
                "each r_i = 1 is odd, so neither factor carries Hodge classes while the product does",
                "isogenous as bare curves; the two factors differ as varieties with F-action"};
    require_valid(fx.datum);
    return fx;
}

Fixture type1_surface() {
    const FieldPtr E = NumberField::make(P({-2, 0, 1}));
    CompositumComponent comp{E, EmbeddedSubfield::whole(E), EmbeddedSubfield::whole(E), 2};
    SimpleFactorDatum f;
    f.name = "S";
    f.albert_type = AlbertType::I;
    f.dim_y = 2;
    f.center = E;
    f.compositum = {comp};
    f.multiplicities = {1, 1};
    Fixture fx;
    fx.name = "type1-surface";
    fx.datum.field_f = E;
    fx.datum.factors.push_back(f);
    fx.expected = {Overall::Decomposable, true, {true}, {FactorKind::Decomposable}, std::nullopt, true};
    fx.notes = {"abelian surface with real multiplication by Q(sqrt 2), F = E"};
    require_valid(fx.datum);
    return fx;
}

namespace {

struct TripleCandidate {
    std::vector<std::string> parameters;
    FieldPtr E;
    CMStructure cm;
    Multiquadratic alg;
    QVector s;  // generator of F in algebra coordinates
};

// Builds K, the embeddings and the datum, then runs every exact check.
std::optional<Fixture> finish_triple(int n, const TripleCandidate& c, SearchCertificate cert) {
    const Multiquadratic& alg = c.alg;
    const size_t D = alg.dim();
    const QVector one = unit(D, 0);
    std::optional<PrimitiveField> pf;
    long used = 0;
    for (long shift = 1; shift <= 30 && !pf; ++shift) {
        QMatrix z = alg.x_op();
        Rational w = shift;
        for (size_t j = 0; j < alg.ys.size(); ++j, w *= 2) z = z + w * alg.t_op(j);
        pf = primitive_field(z, one);
        used = shift;
    }
    if (!pf) return std::nullopt;
    const FieldPtr K = pf->field;
    cert.checks.push_back(check("primitive element of K", true,
                                "z = x + " + std::to_string(used) + " * sum 2^j t_j, [K:Q] = " + std::to_string(D)));
    const FieldElement x_img(K, pf->to_field * (alg.x_op() * one));
    const FieldElement s_img(K, pf->to_field * c.s);
    const Poly f_poly = minimal_polynomial(s_img);
    const size_t want_f = n == 2 ? 4 : 8;
    cert.checks.push_back(check("[F:Q]", static_cast<size_t>(f_poly.degree()) == want_f,
                                std::to_string(f_poly.degree())));
    if (static_cast<size_t>(f_poly.degree()) != want_f) return std::nullopt;
    const FieldPtr F = NumberField::make(f_poly);
    EmbeddedSubfield embed_e(x_img, c.E->min_poly());
    EmbeddedSubfield embed_f(s_img, f_poly);

    const CMVerification cmv = verify_cm(c.cm);
    cert.checks.push_back(check("E is CM", true, "E_0 of degree " + std::to_string(cmv.e0)));
    const SubfieldIntersection x = subfield_intersection(embed_e, embed_f, {&cmv, &embed_e});
    const bool fixed = x.conjugation_fixed.value_or(false);
    cert.checks.push_back(check("E cap F conjugation-fixed", fixed, "[E cap F : Q] = " + std::to_string(x.basis.size())));
    cert.checks.push_back(check("E cap F totally real", x.totally_real));
    if (!fixed || !x.totally_real) return std::nullopt;

    const long d = static_cast<long>(D / c.E->degree());
    const long rank_k = d;
    const long dim_y = static_cast<long>(D) * rank_k / 2;
    SimpleFactorDatum probe = type_iv_factor("Y", c.E, c.cm, d, 1, dim_y, {{K, embed_e, embed_f, 1}}, {});
    const ThetaResult th = theta_map(probe, F, probe.compositum);
    cert.checks.push_back(check("theta nonzero for module rank 1", !th.is_zero, "rank " + std::to_string(th.rank)));
    if (th.is_zero) return std::nullopt;

    Fixture fx;
    fx.name = n == 2 ? "remark-iv-n2" : "remark-iv-n3";
    fx.datum.field_f = F;
    const long r = 2 * dim_y / static_cast<long>(F->degree());
    fx.datum.factors.push_back(
        type_iv_factor("Y", c.E, c.cm, d, 1, dim_y, {{K, embed_e, embed_f, rank_k}}, balanced(F->degree(), r)));
    const ValidationReport vr = validate(fx.datum);
    cert.checks.push_back(check("datum validates", vr.ok(), vr.ok() ? "" : vr.summary()));
    if (!vr.ok()) return std::nullopt;
    cert.parameters = c.parameters;
    cert.parameters.push_back("K: " + join_poly(K->min_poly()));
    cert.parameters.push_back("E: " + join_poly(c.E->min_poly()) + ", image of x: " + x_img.to_string());
    cert.parameters.push_back("F: " + join_poly(f_poly) + ", image of x: " + s_img.to_string());
    fx.expected = {Overall::Exceptional, true, {true}, {FactorKind::Exceptional}, true, std::nullopt};
    fx.notes = {"type IV factor with m = 1 and d = [K:E] containing K as a maximal subfield of D",
                "E cap F is totally real yet theta does not vanish: the implication from theta = 0 has no converse",
                "an abelian variety with this endomorphism algebra is assumed to exist; none is constructed",
                "the Galois group of K is not computed; only the properties consumed downstream are verified"};
    fx.certificate = std::move(cert);
    return fx;
}

}  // namespace

Fixture remark_iv_triple(int n, uint64_t seed) {
    if (n != 2 && n != 3) throw Error(ErrorKind::InvalidInput, "remark_iv_triple supports n = 2 or 3");
    SearchCertificate cert;
    cert.seed = seed;
    if (n == 2) {
        std::vector<std::pair<long, long>> pool;
        for (long h = 2; h <= 40; ++h)
            for (long b = 1; b < h; ++b) pool.emplace_back(b, h - b);
        for (size_t idx : visit_order(pool.size(), seed)) {
            const auto [b, c] = pool[idx];
            ++cert.candidates_tried;
            const long disc = b * b - 4 * c;
            if (disc <= 0 || is_square(disc) || is_square(c) || is_square(Integer(c) * disc)) continue;
            SearchCertificate cc = cert;
            cc.checks.push_back(check("b^2 - 4c > 0, non-square", true, std::to_string(disc)));
            cc.checks.push_back(check("c and c(b^2 - 4c) non-squares", true));
            const Poly g = P({c, b, 1});
            const auto e0_cert = certify_nonsquare(g, QVector{0, 1});
            if (!e0_cert) continue;
            cc.checks.push_back(check("y1 non-square in Q(y1)", true, describe(*e0_cert)));
            const Poly gx = P({c, 0, b, 0, 1});
            const FieldPtr E = NumberField::make(gx);
            const FieldElement y2 = elem(E, {-b, 0, -1});
            const auto k_cert = certify_nonsquare(gx, y2.coords());
            if (!k_cert) continue;
            cc.checks.push_back(check("y2 non-square in E", true, describe(*k_cert)));
            TripleCandidate cand{{"g(y) = y^2 + " + std::to_string(b) + "y + " + std::to_string(c)},
                                 E,
                                 cm_of(elem(E, {0, 0, 1}), FieldElement::gen(E)),
                                 {E, {y2}},
                                 {}};
            cand.s = add(cand.alg.x_op() * unit(cand.alg.dim(), 0), cand.alg.t_op(0) * unit(cand.alg.dim(), 0));
            if (auto fx = finish_triple(2, cand, std::move(cc))) return *fx;
        }
    } else {
        const std::vector<Poly> cubics = {P({1, -3, 0, 1}), P({-1, -2, 1, 1})};
        std::vector<std::pair<size_t, long>> pool;
        for (long k = 2; k <= 12; ++k)
            for (size_t i = 0; i < cubics.size(); ++i) pool.emplace_back(i, k);
        for (size_t idx : visit_order(pool.size(), seed)) {
            const auto [ci, k] = pool[idx];
            ++cert.candidates_tried;
            const Poly& h = cubics[ci];
            SearchCertificate cc = cert;
            // rational roots of a monic cubic with constant +-1 can only be +-1
            const bool irreducible = h.eval(1) != 0 && h.eval(-1) != 0;
            cc.checks.push_back(check("cubic irreducible", irreducible, join_poly(h)));
            if (!irreducible) continue;
            const Poly m = h.compose(P({k, 1}));  // minimal polynomial of y1 = rho - k
            const auto e0_cert = certify_nonsquare(m, QVector{0, 1});
            if (!e0_cert) continue;
            cc.checks.push_back(check("y1 non-square in Q(y1)", true, describe(*e0_cert)));
            const Poly mx = m.compose(P({0, 0, 1}));
            const FieldPtr E = NumberField::make(mx);
            const FieldElement rho = elem(E, {k, 0, 1});
            const FieldElement two_k = FieldElement::rational(E, Rational(2 + k));
            const FieldElement y2 = rho * rho - two_k;
            const FieldElement y3 = (y2 + FieldElement::rational(E, Rational(k))).pow(2) - two_k;
            // the cyclic action rho -> rho^2 - 2 permutes the conjugates of y1
            const bool cyclic = FieldElement::from_poly(E, m.compose(y2.as_poly())).is_zero() &&
                                FieldElement::from_poly(E, m.compose(y3.as_poly())).is_zero();
            cc.checks.push_back(check("y2, y3 conjugates of y1", cyclic));
            if (!cyclic) continue;
            bool all = true;
            for (const auto& [label, a] : std::vector<std::pair<std::string, FieldElement>>{
                     {"y2", y2}, {"y3", y3}, {"y2 y3", y2 * y3}}) {
                const auto nc = certify_nonsquare(mx, a.coords());
                if (!nc) {
                    all = false;
                    break;
                }
                cc.checks.push_back(check(label + " non-square in E", true, describe(*nc)));
            }
            if (!all) continue;
            TripleCandidate cand{{"cubic " + join_poly(h) + ", shift " + std::to_string(k)},
                                 E,
                                 cm_of(elem(E, {0, 0, 1}), FieldElement::gen(E)),
                                 {E, {y2, y3}},
                                 {}};
            const QVector one = unit(cand.alg.dim(), 0);
            cand.s = add(add(cand.alg.x_op() * one, cand.alg.t_op(0) * one), cand.alg.t_op(1) * one);
            if (auto fx = finish_triple(3, cand, std::move(cc))) return *fx;
        }
    }
    throw Error(ErrorKind::SearchExhausted, "no candidate in the pool passed; raise the height bound");
}

Fixture remark_v_datum() {
    const FieldPtr E = NumberField::make(P({1, 0, 1}));
    const FieldPtr K = NumberField::make(P({1, 0, 0, 0, 1}));
    const CMStructure cm = cm_of(FieldElement::zero(E), FieldElement::gen(E));
    EmbeddedSubfield embed_e(elem(K, {0, 0, 1}), E->min_poly());
    CompositumComponent comp{K, embed_e, EmbeddedSubfield::whole(K), 2};
    Fixture fx;
    fx.name = "remark-v";
    fx.datum.field_f = K;
    fx.datum.factors.push_back(type_iv_factor("Y", E, cm, 2, 1, 4, {comp}, {1, 1, 1, 1}));
    fx.expected = {Overall::Exceptional, true, {true}, {FactorKind::Exceptional}, true, std::nullopt};
    fx.notes = {"E = Q(i) inside K = F = Q(zeta_8); E cap F = Q(i) is not totally real",
                "type IV with d = 2 and m = 1; theta(i) = 2 i is non-zero"};
    require_valid(fx.datum);
    return fx;
}

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {"weil-fourfold", "type1-surface", "product-odd",
                                                   "remark-iv-n2",  "remark-iv-n3",  "remark-v"};
    return names;
}

Fixture make_fixture(const std::string& name, uint64_t seed) {
    if (name == "weil-fourfold") return weil_fourfold();
    if (name == "type1-surface") return type1_surface();
    if (name == "product-odd") return product_odd_ratios();
    if (name == "remark-iv-n2") return remark_iv_triple(2, seed);
    if (name == "remark-iv-n3") return remark_iv_triple(3, seed);
    if (name == "remark-v") return remark_v_datum();
    throw Error(ErrorKind::InvalidInput, "unknown example '" + name + "'");
}

bool self_test(const Fixture& fx, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const ClassificationReport rep = classify(fx.datum);
    const ExpectedReport& ex = fx.expected;
    if (rep.overall != ex.overall) return fail("overall " + std::string(to_string(rep.overall)));
    if (rep.hodge.all_hodge != ex.all_hodge) return fail("X-level Hodge verdict");
    if (rep.factors.size() != ex.factor_hodge.size()) return fail("factor count");
    for (size_t i = 0; i < rep.factors.size(); ++i) {
        if (rep.factors[i].hodge.all_hodge != ex.factor_hodge[i]) return fail("factor Hodge verdict " + std::to_string(i));
        const std::optional<FactorKind> kind =
            rep.factors[i].verdict ? std::optional<FactorKind>(rep.factors[i].verdict->kind) : std::nullopt;
        if (kind != ex.factor_kinds[i]) return fail("factor verdict " + std::to_string(i));
    }
    if (ex.theta_nonzero) {
        const auto& f = fx.datum.factors[0];
        const bool nz = !theta_map(f, fx.datum.field_f, f.compositum).is_zero;
        if (nz != *ex.theta_nonzero) return fail("theta");
    }
    if (ex.witness_found) {
        const WitnessModel wm = witness_model(fx.datum);
        const WeilSubspace ws = weil_subspace(wm.rep);
        const auto forms = divisor_forms(wm.rep, wm.polarization, wm.symmetric);
        if (decomposability_witness(ws, wm.rep.dim_v, forms).found != *ex.witness_found) return fail("witness");
    }
    if (fx.certificate && !fx.certificate->all_passed()) return fail("certificate has a failed check");
    return true;
}

// ---------------------------------------------------------------- configurations

namespace {

const std::vector<long> kImag = {1, 2, 3, 7, 11, 19, 5, 6};
const std::vector<long> kReal = {2, 3, 5, 6, 7, 10, 13, 11};
const std::vector<long> kPrimes = {2, 3, 5, 7, 11, 13};

FieldPtr quad(long a) { return NumberField::make(P({a, 0, 1})); }  // x^2 + a

CMStructure imag_quad_cm(const FieldPtr& E) { return cm_of(FieldElement::zero(E), FieldElement::gen(E)); }

CompositumConfiguration assemble(std::string family, std::vector<std::string> params, const FieldPtr& E,
                                 const CMStructure& cm, const FieldPtr& F, const FieldPtr& K,
                                 const EmbeddedSubfield& embed_e, const EmbeddedSubfield& embed_f) {
    const long kd = static_cast<long>(K->degree());
    const long ke = kd / static_cast<long>(E->degree());
    const long m = std::max<long>(2, ke);
    const long dim_y = kd;
    const long r = 2 * m * dim_y / static_cast<long>(F->degree());
    CompositumConfiguration cfg;
    cfg.family = std::move(family);
    cfg.parameters = std::move(params);
    cfg.datum.field_f = F;
    cfg.datum.factors.push_back(
        type_iv_factor("Y", E, cm, 1, m, dim_y, {{K, embed_e, embed_f, 2 * m}}, balanced(F->degree(), r)));
    require_valid(cfg.datum);
    return cfg;
}

}  // namespace

CompositumConfiguration compositum_configuration(size_t index) {
    const size_t family = index % kCompositumFamilies;
    const size_t j = index / kCompositumFamilies;
    switch (family) {
        case 0: {  // Q(sqrt -a) with Q(sqrt p), linearly disjoint
            const long a = kImag[j % kImag.size()];
            long p = kReal[(j + 1) % kReal.size()];
            if (p == a) p = kReal[(j + 2) % kReal.size()];
            const FieldPtr E = quad(a), F = quad(-p);
            const TensorField t = tensor_field(E, F);
            return assemble("imag-quad x real-quad", {"a=" + std::to_string(a), "p=" + std::to_string(p)}, E,
                            imag_quad_cm(E), F, t.pf.field, EmbeddedSubfield(t.a_gen, E->min_poly()),
                            EmbeddedSubfield(t.b_gen, F->min_poly()));
        }
        case 1: {  // E = F = K
            const long a = kImag[j % kImag.size()];
            const FieldPtr E = quad(a);
            return assemble("E = F", {"a=" + std::to_string(a)}, E, imag_quad_cm(E), E, E, EmbeddedSubfield::whole(E),
                            EmbeddedSubfield::whole(E));
        }
        case 2: {  // two distinct imaginary quadratics
            const long a = kImag[j % kImag.size()];
            const long b = kImag[(j + 3) % kImag.size()];
            const FieldPtr E = quad(a), F = quad(b);
            const TensorField t = tensor_field(E, F);
            return assemble("two imag-quads", {"a=" + std::to_string(a), "b=" + std::to_string(b)}, E,
                            imag_quad_cm(E), F, t.pf.field, EmbeddedSubfield(t.a_gen, E->min_poly()),
                            EmbeddedSubfield(t.b_gen, F->min_poly()));
        }
        case 3: {  // D4 quartic CM field with F = E_0
            size_t hits = 0;
            for (long h = 2; h <= 60; ++h)
                for (long b = 1; b < h; ++b) {
                    const long c = h - b, disc = b * b - 4 * c;
                    if (disc <= 0 || is_square(disc) || is_square(c) || is_square(Integer(c) * disc)) continue;
                    const Poly g = P({c, b, 1});
                    if (!certify_nonsquare(g, QVector{0, 1})) continue;
                    if (hits++ != j) continue;
                    const FieldPtr E = NumberField::make(P({c, 0, b, 0, 1}));
                    const FieldPtr F = NumberField::make(g);
                    return assemble("D4 quartic CM, F = E_0", {"b=" + std::to_string(b), "c=" + std::to_string(c)}, E,
                                    cm_of(elem(E, {0, 0, 1}), FieldElement::gen(E)), F, E,
                                    EmbeddedSubfield::whole(E), EmbeddedSubfield(elem(E, {0, 0, 1}), g));
                }
            throw Error(ErrorKind::SearchExhausted, "D4 pool exhausted");
        }
        case 4: {  // biquadratic CM field E = Q(sqrt -a, sqrt p), F one of its quadratic subfields
            const long a = kImag[j % 4];
            long p = kReal[(j + 1) % kReal.size()];
            if (p == a) p = kReal[(j + 2) % kReal.size()];
            const FieldPtr A = quad(a), B = quad(-p);
            const TensorField t = tensor_field(A, B);
            const FieldPtr E = t.pf.field;
            const CMStructure cm = cm_of(t.b_gen, t.a_gen);
            FieldPtr F;
            std::optional<EmbeddedSubfield> ef;
            std::string which;
            switch (j % 3) {
                case 0: F = B, ef.emplace(t.b_gen, B->min_poly()), which = "F=Q(sqrt p)"; break;
                case 1: F = A, ef.emplace(t.a_gen, A->min_poly()), which = "F=Q(sqrt -a)"; break;
                default:
                    F = quad(a * p), ef.emplace(t.a_gen * t.b_gen, P({a * p, 0, 1})), which = "F=Q(sqrt -ap)";
                    break;
            }
            return assemble("biquadratic CM, F subfield", {"a=" + std::to_string(a), "p=" + std::to_string(p), which},
                            E, cm, F, E, EmbeddedSubfield::whole(E), *ef);
        }
        case 5: {  // Q(sqrt -a) with a totally real cubic
            const std::vector<Poly> cubics = {P({1, -3, 0, 1}), P({-1, -2, 1, 1}), P({1, -4, 0, 1}), P({-1, -3, 0, 1})};
            const long a = kImag[j % kImag.size()];
            const Poly& h = cubics[j % cubics.size()];
            const FieldPtr E = quad(a), F = NumberField::make(h);
            const TensorField t = tensor_field(E, F);
            return assemble("imag-quad x real cubic", {"a=" + std::to_string(a), "cubic " + join_poly(h)}, E,
                            imag_quad_cm(E), F, t.pf.field, EmbeddedSubfield(t.a_gen, E->min_poly()),
                            EmbeddedSubfield(t.b_gen, F->min_poly()));
        }
        case 6: {  // Q(sqrt -a) with Q(sqrt p, sqrt q), p, q distinct primes, a coprime to both
            const long p = kPrimes[j % kPrimes.size()];
            const long q = kPrimes[(j + 1) % kPrimes.size()];
            const std::vector<long> imag = {1, 17, 19, 23};
            const long a = imag[j % imag.size()];
            const FieldPtr Fp = quad(-p), Fq = quad(-q);
            const TensorField tf = tensor_field(Fp, Fq);
            const FieldPtr F = tf.pf.field;
            const FieldPtr E = quad(a);
            const TensorField t = tensor_field(E, F);
            return assemble("imag-quad x real biquadratic",
                            {"a=" + std::to_string(a), "p=" + std::to_string(p), "q=" + std::to_string(q)}, E,
                            imag_quad_cm(E), F, t.pf.field, EmbeddedSubfield(t.a_gen, E->min_poly()),
                            EmbeddedSubfield(t.b_gen, F->min_poly()));
        }
        default: {  // Q(zeta_5) with Q(sqrt 5), itself, or a disjoint quadratic
            const FieldPtr E = NumberField::make(P({1, 1, 1, 1, 1}));
            const FieldElement rg = elem(E, {-1, 0, -1, -1});  // zeta + zeta^-1
            const FieldElement eta = elem(E, {1, 2, 1, 1});    // zeta - zeta^-1
            const CMStructure cm = cm_of(rg, eta);
            switch (j % 4) {
                case 0: {
                    const FieldPtr F = quad(-5);
                    const FieldElement s5 = FieldElement::one(E) + Rational(2) * rg;
                    return assemble("Q(zeta5) variants", {"F=Q(sqrt 5)"}, E, cm, F, E, EmbeddedSubfield::whole(E),
                                    EmbeddedSubfield(s5, F->min_poly()));
                }
                case 1:
                    return assemble("Q(zeta5) variants", {"F=E"}, E, cm, E, E, EmbeddedSubfield::whole(E),
                                    EmbeddedSubfield::whole(E));
                default: {
                    const long b = j % 4 == 2 ? -2 : 1;  // Q(sqrt 2) or Q(i)
                    const FieldPtr F = quad(b);
                    const TensorField t = tensor_field(E, F);
                    return assemble("Q(zeta5) variants", {b == 1 ? "F=Q(i)" : "F=Q(sqrt 2)"}, E, cm, F, t.pf.field,
                                    EmbeddedSubfield(t.a_gen, E->min_poly()), EmbeddedSubfield(t.b_gen, F->min_poly()));
                }
            }
        }
    }
}

}  // namespace weil

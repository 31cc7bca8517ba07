#include "weil/io.hpp"

#include "weil/error.hpp"
#include "weil/wedge.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

namespace weil {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw Error(ErrorKind::InvalidInput, path + ": " + message);
}

std::string key_path(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

std::string index_path(const std::string& base, size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

void expect_object(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(path.empty() ? "$" : path, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
        if (!ok.count(key)) fail(key_path(path, key), "unknown key");
}

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(key_path(path, key), "missing");
    return *it;
}

const Json& expect_array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

Rational read_rational(const Json& j, const std::string& path) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return parse_rational(std::to_string(j.get<uint64_t>()));
        return parse_rational(std::to_string(j.get<int64_t>()));
    }
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error& e) {
            fail(path, e.what());
        }
    }
    fail(path, "expected a rational (string \"p/q\" or integer)");
}

long read_long(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    if (j.is_number_unsigned() && j.get<uint64_t>() > static_cast<uint64_t>(std::numeric_limits<long>::max()))
        fail(path, "integer out of range");
    return static_cast<long>(j.get<int64_t>());
}

std::string read_string(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

QVector read_vector(const Json& j, const std::string& path) {
    expect_array(j, path);
    QVector v;
    v.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i) v.push_back(read_rational(j[i], index_path(path, i)));
    return v;
}

FieldPtr read_field(const Json& j, const std::string& path) {
    expect_object(j, path, {"min_poly"});
    const std::string mp = key_path(path, "min_poly");
    const Poly f(read_vector(member(j, "min_poly", path), mp));
    if (f.degree() < 1) fail(mp, "degree must be at least 1");
    try {
        return NumberField::make(f);
    } catch (const Error& e) {
        fail(mp, e.what());
    }
}

FieldElement read_element(const Json& j, const FieldPtr& field, const std::string& path) {
    QVector c = read_vector(j, path);
    if (c.size() != field->degree())
        fail(path, "expected " + std::to_string(field->degree()) + " coordinates, got " + std::to_string(c.size()));
    return FieldElement(field, std::move(c));
}

EmbeddedSubfield read_embedding(const Json& j, const FieldPtr& ambient, const FieldPtr& sub,
                                const std::string& path) {
    FieldElement gen = read_element(j, ambient, path);
    try {
        return EmbeddedSubfield(std::move(gen), sub->min_poly());
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

SimpleFactorDatum read_factor(const Json& j, const std::string& path) {
    expect_object(j, path, {"name", "albert_type", "dim", "power", "d", "center", "cm"});
    SimpleFactorDatum f;
    f.name = read_string(member(j, "name", path), key_path(path, "name"));
    if (f.name.empty()) fail(key_path(path, "name"), "must not be empty");
    const std::string tp = key_path(path, "albert_type");
    const auto type = parse_albert_type(read_string(member(j, "albert_type", path), tp));
    if (!type) fail(tp, "expected one of \"I\", \"II\", \"III\", \"IV\"");
    f.albert_type = *type;
    f.dim_y = read_long(member(j, "dim", path), key_path(path, "dim"));
    f.power = read_long(member(j, "power", path), key_path(path, "power"));
    f.d = read_long(member(j, "d", path), key_path(path, "d"));
    f.center = read_field(member(j, "center", path), key_path(path, "center"));
    if (const auto it = j.find("cm"); it != j.end()) {
        const std::string cp = key_path(path, "cm");
        expect_object(*it, cp, {"real_gen", "eta"});
        f.cm = CMStructure{read_element(member(*it, "real_gen", cp), f.center, key_path(cp, "real_gen")),
                           read_element(member(*it, "eta", cp), f.center, key_path(cp, "eta"))};
    }
    return f;
}

CompositumComponent read_component(const Json& j, const SimpleFactorDatum& fac, const FieldPtr& F,
                                   const std::string& path) {
    expect_object(j, path, {"min_poly", "embed_e", "embed_f", "module_rank"});
    CompositumComponent c{read_field(Json{{"min_poly", member(j, "min_poly", path)}}, path),
                          EmbeddedSubfield::rationals(F), EmbeddedSubfield::rationals(F), 0};
    c.embed_e = read_embedding(member(j, "embed_e", path), c.field, fac.center, key_path(path, "embed_e"));
    c.embed_f = read_embedding(member(j, "embed_f", path), c.field, F, key_path(path, "embed_f"));
    c.module_rank = read_long(member(j, "module_rank", path), key_path(path, "module_rank"));
    return c;
}

Json rational_json(const Rational& q) { return to_string(q); }

Json vector_json(const QVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rational_json(x));
    return a;
}

Json matrix_json(const QMatrix& m) {
    Json a = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
        a.push_back(std::move(row));
    }
    return a;
}

// Fixed scientific notation so numeric fields are stable text.
std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

std::string sci(const Rational& q) { return sci(q.get_d()); }

Json optional_index(const std::optional<size_t>& i) { return i ? Json(*i) : Json(nullptr); }

Json verdict_json(const FactorVerdict& v) {
    Json j;
    j["kind"] = std::string(to_string(v.kind));
    j["case"] = std::string(to_string(v.case_tag));
    j["literal_reading_differs"] = v.literal_reading_differs;
    j["parity_value"] = v.parity_value ? Json(*v.parity_value) : Json(nullptr);
    j["f_contained"] = v.f_contained ? Json(*v.f_contained) : Json(nullptr);
    j["f_equal"] = v.f_equal ? Json(*v.f_equal) : Json(nullptr);
    if (v.theta) {
        j["theta"] = {{"matrix", matrix_json(v.theta->matrix)}, {"rank", v.theta->rank}, {"is_zero", v.theta->is_zero}};
    } else {
        j["theta"] = nullptr;
    }
    return j;
}

Json gdiv_json(const GdivStructure& g) {
    return {{"group", g.group},
            {"k_formula", g.k_formula},
            {"k", g.k},
            {"representation", g.representation},
            {"tau_factors", g.tau_factors},
            {"table_rep_dim", g.table_rep_dim},
            {"rep_dim_per_tau", g.rep_dim_per_tau},
            {"component_group_order", g.component_group_order.get_str()},
            {"center_is_torus", g.center_is_torus},
            {"center_torus_rank", g.center_torus_rank},
            {"center", g.center}};
}

std::string join(const std::vector<long>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

struct Prepared {
    FRepresentation rep;
    size_t forms = 0;  // C(N, r)
};

Prepared prepare(const AbelianVarietyDatum& datum) {
    require_valid(datum);
    Prepared p{FRepresentation::from_datum(datum), 0};
    p.forms = binomial(p.rep.dim_v, p.rep.r());
    return p;
}

void require_cap(const Prepared& p, const OracleOptions& opt) {
    if (p.forms > opt.cap)
        throw Error(ErrorKind::CombinatorialBlowup, "C(" + std::to_string(p.rep.dim_v) + ", " +
                                                        std::to_string(p.rep.r()) + ") exceeds the cap " +
                                                        std::to_string(opt.cap));
}

Json wedge_json(const Prepared& p) {
    const WeilSubspace ws = weil_subspace(p.rep);
    if (ws.rank != p.rep.degree())
        throw Error(ErrorKind::RankDefect, "dim W_F = " + std::to_string(ws.rank) + " but [F:Q] = " +
                                               std::to_string(p.rep.degree()));
    return {{"dim_v", p.rep.dim_v}, {"r", ws.r},   {"wedge_dim", ws.wedge_dim},
            {"dim_w_f", ws.rank},   {"deg_f", p.rep.degree()}, {"agrees", true}};
}

Json hodge_json(const AbelianVarietyDatum& datum, const Prepared& p, const OracleOptions& opt) {
    const std::vector<long> n = total_multiplicities(datum);
    const WeilSubspace ws = weil_subspace(p.rep);
    const ComplexStructureNum cs = build_complex_structure(p.rep, n, opt.precision, opt.tolerance);
    const HodgeTypeResult h = hodge_type_oracle(p.rep, ws, cs, opt.tolerance);
    const HodgeVerdict criterion = hodge_test(n, datum.field_f->embeddings().conjugate);
    if (h.is_all_hodge != criterion.all_hodge)
        throw Error(ErrorKind::InconsistencyDetected,
                    std::string("bidegree oracle says ") + (h.is_all_hodge ? "Hodge" : "not Hodge") +
                        ", multiplicity test says " + (criterion.all_hodge ? "Hodge" : "not Hodge"));
    Json comps = Json::array();
    for (const auto& c : h.components)
        comps.push_back({{"sigma", c.sigma}, {"p", c.p}, {"q", c.q}, {"k", sci(c.k_numeric)}, {"residual", sci(c.residual)}});
    return {{"components", comps},
            {"is_all_hodge", h.is_all_hodge},
            {"agrees", true},
            {"precision", opt.precision},
            {"residuals",
             {{"bidegree_max", sci(h.max_residual)},
              {"j_square", sci(cs.residual_square)},
              {"j_commute", sci(cs.residual_commute)},
              {"j_imaginary", sci(cs.residual_imag)}}}};
}

Json witness_json(const AbelianVarietyDatum& datum, const OracleOptions& opt) {
    const WitnessModel wm = witness_model(datum);
    const WeilSubspace ws = weil_subspace(wm.rep);
    const auto forms = divisor_forms(wm.rep, wm.polarization, wm.symmetric);
    const WitnessResult w = decomposability_witness(ws, wm.rep.dim_v, forms, opt.cap);
    Json monomials = Json::array();
    for (const auto& m : w.monomials) monomials.push_back(m);
    Json coeffs = Json::array();
    for (const auto& c : w.coefficients) coeffs.push_back(vector_json(c));
    return {{"found", w.found},
            {"divisor_forms", forms.size()},
            {"monomials", monomials},
            {"coefficients", coeffs},
            {"products_rank", w.products_rank},
            {"augmented_rank", w.augmented_rank},
            {"dim_w_f", ws.rank},
            {"caveat", w.caveat}};
}

}  // namespace

AbelianVarietyDatum parse_datum(const Json& doc) {
    expect_object(doc, "", {"factors", "field_f", "multiplicities", "compositum"});
    AbelianVarietyDatum datum;
    datum.field_f = read_field(member(doc, "field_f", ""), "field_f");

    const Json& factors = expect_array(member(doc, "factors", ""), "factors");
    std::set<std::string> names;
    for (size_t i = 0; i < factors.size(); ++i) {
        const std::string path = index_path("factors", i);
        SimpleFactorDatum f = read_factor(factors[i], path);
        if (!names.insert(f.name).second) fail(key_path(path, "name"), "duplicate factor name \"" + f.name + "\"");
        datum.factors.push_back(std::move(f));
    }

    const Json& mult = member(doc, "multiplicities", "");
    if (!mult.is_object()) fail("multiplicities", "expected an object");
    for (auto& f : datum.factors) {
        const std::string path = key_path("multiplicities", f.name);
        const Json& arr = expect_array(member(mult, f.name, "multiplicities"), path);
        for (size_t s = 0; s < arr.size(); ++s) f.multiplicities.push_back(read_long(arr[s], index_path(path, s)));
    }

    const Json empty = Json::object();
    const auto cit = doc.find("compositum");
    const Json& comp = cit == doc.end() ? empty : *cit;
    if (!comp.is_object()) fail("compositum", "expected an object");
    for (const auto& [key, value] : comp.items())
        if (!names.count(key)) fail(key_path("compositum", key), "no factor with this name");
    for (auto& f : datum.factors) {
        const auto it = comp.find(f.name);
        if (it == comp.end()) continue;
        const std::string path = key_path("compositum", f.name);
        expect_array(*it, path);
        for (size_t i = 0; i < it->size(); ++i)
            f.compositum.push_back(read_component((*it)[i], f, datum.field_f, index_path(path, i)));
    }
    for (const auto& [key, value] : mult.items())
        if (!names.count(key)) fail(key_path("multiplicities", key), "no factor with this name");
    return datum;
}

AbelianVarietyDatum parse_datum_text(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        fail("$", "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return parse_datum(doc);
}

Json datum_to_json(const AbelianVarietyDatum& datum) {
    Json factors = Json::array();
    Json mult = Json::object();
    Json comp = Json::object();
    for (const auto& f : datum.factors) {
        Json jf = {{"name", f.name},
                   {"albert_type", std::string(to_string(f.albert_type))},
                   {"dim", f.dim_y},
                   {"power", f.power},
                   {"d", f.d},
                   {"center", {{"min_poly", vector_json(f.center->min_poly().coeffs())}}}};
        if (f.cm) jf["cm"] = {{"real_gen", vector_json(f.cm->real_gen.coords())}, {"eta", vector_json(f.cm->eta.coords())}};
        factors.push_back(std::move(jf));
        mult[f.name] = f.multiplicities;
        Json comps = Json::array();
        for (const auto& c : f.compositum)
            comps.push_back({{"min_poly", vector_json(c.field->min_poly().coeffs())},
                             {"embed_e", vector_json(c.embed_e.gen_image().coords())},
                             {"embed_f", vector_json(c.embed_f.gen_image().coords())},
                             {"module_rank", c.module_rank}});
        comp[f.name] = std::move(comps);
    }
    return {{"factors", factors},
            {"field_f", {{"min_poly", vector_json(datum.field_f->min_poly().coeffs())}}},
            {"multiplicities", mult},
            {"compositum", comp}};
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorKind::InconsistencyDetected, "SHA-256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

std::string canonical_dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json report_to_json(const ClassificationReport& report) {
    Json factors = Json::array();
    for (const auto& f : report.factors)
        factors.push_back({{"name", f.name},
                           {"r_i", f.r_i},
                           {"all_hodge", f.hodge.all_hodge},
                           {"hodge_witness", optional_index(f.hodge.witness)},
                           {"verdict", f.verdict ? verdict_json(*f.verdict) : Json(nullptr)},
                           {"b", {{"k_b", f.b.k_b}, {"b", f.b.b}}},
                           {"gdiv", gdiv_json(f.gdiv)}});
    return {{"g", report.g},
            {"r", report.r},
            {"deg_f", report.deg_f},
            {"multiplicities", report.multiplicities},
            {"all_hodge", report.hodge.all_hodge},
            {"hodge_witness", optional_index(report.hodge.witness)},
            {"factors", factors},
            {"overall", std::string(to_string(report.overall))},
            {"tate_note", report.tate_note}};
}

std::string report_to_text(const ClassificationReport& report) {
    std::ostringstream os;
    os << "overall: " << to_string(report.overall) << "\n";
    os << "g = " << report.g << ", [F:Q] = " << report.deg_f << ", r = " << report.r << "\n";
    os << "multiplicities: " << join(report.multiplicities) << "\n";
    os << "Hodge: " << (report.hodge.all_hodge ? "yes" : "no");
    if (report.hodge.witness) os << " (sigma " << *report.hodge.witness << " differs from its conjugate)";
    os << "\n";
    for (const auto& f : report.factors) {
        os << "factor " << f.name << ": r_i = " << f.r_i << ", ";
        if (!f.verdict) {
            os << "not Hodge\n";
        } else {
            const auto& v = *f.verdict;
            os << to_string(v.kind) << " [" << to_string(v.case_tag) << "]";
            if (v.parity_value) os << ", parity value " << *v.parity_value;
            if (v.theta) os << ", theta rank " << v.theta->rank;
            if (v.literal_reading_differs) os << ", literal subfield reading differs";
            os << "\n";
        }
        os << "  B: " << f.b.b << " over " << f.b.k_b << "\n";
        os << "  G_div: " << f.gdiv.group << " k = " << f.gdiv.k << " (" << f.gdiv.k_formula << "), "
           << f.gdiv.representation << ", " << f.gdiv.tau_factors << " factor(s), centre " << f.gdiv.center << "\n";
    }
    if (!report.tate_note.empty()) os << "note: " << report.tate_note << "\n";
    return os.str();
}

Json wedge_oracle(const AbelianVarietyDatum& datum, const OracleOptions& opt) {
    const Prepared p = prepare(datum);
    require_cap(p, opt);
    return wedge_json(p);
}

Json hodge_type_oracle_report(const AbelianVarietyDatum& datum, const OracleOptions& opt) {
    const Prepared p = prepare(datum);
    require_cap(p, opt);
    return hodge_json(datum, p, opt);
}

Json witness_oracle(const AbelianVarietyDatum& datum, const OracleOptions& opt) {
    require_valid(datum);
    return witness_json(datum, opt);
}

Json oracle_crosscheck(const AbelianVarietyDatum& datum, const ClassificationReport& report,
                       const OracleOptions& opt) {
    const Prepared p = prepare(datum);
    Json out = Json::object();
    if (p.forms > opt.cap) {
        const std::string why = "skipped: C(N, r) exceeds " + std::to_string(opt.cap);
        out["wedge"] = why;
        out["hodge_type"] = why;
        out["witness"] = why;
        return out;
    }
    out["wedge"] = wedge_json(p);
    Json h = hodge_json(datum, p, opt);
    if (h["is_all_hodge"].get<bool>() != report.hodge.all_hodge)
        throw Error(ErrorKind::InconsistencyDetected, "bidegree oracle disagrees with the report");
    out["hodge_type"] = std::move(h);
    try {
        Json w = witness_json(datum, opt);
        const bool decomposable = report.overall == Overall::Decomposable;
        if (w["found"].get<bool>() != decomposable)
            throw Error(ErrorKind::InconsistencyDetected,
                        std::string("divisor witness ") + (decomposable ? "not found" : "found") + " but the verdict is " +
                            std::string(to_string(report.overall)));
        w["agrees"] = true;
        out["witness"] = std::move(w);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::PreconditionViolation && e.kind() != ErrorKind::CombinatorialBlowup) throw;
        out["witness"] = std::string("skipped: ") + e.what();
    }
    return out;
}

}  // namespace weil

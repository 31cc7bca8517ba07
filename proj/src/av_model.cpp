#include "weil/av_model.hpp"

#include "weil/error.hpp"

#include <set>
#include <sstream>

namespace weil {

std::string_view to_string(AlbertType t) {
    switch (t) {
        case AlbertType::I: return "I";
        case AlbertType::II: return "II";
        case AlbertType::III: return "III";
        case AlbertType::IV: return "IV";
    }
    return "?";
}

std::optional<AlbertType> parse_albert_type(std::string_view s) {
    if (s == "I") return AlbertType::I;
    if (s == "II") return AlbertType::II;
    if (s == "III") return AlbertType::III;
    if (s == "IV") return AlbertType::IV;
    return std::nullopt;
}

long AbelianVarietyDatum::g() const {
    long g = 0;
    for (const auto& f : factors) g += f.dim();
    return g;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (size_t i = 0; i < violations.size(); ++i)
        os << (i ? "\n" : "") << violations[i].path << ": " << violations[i].message;
    return os.str();
}

EmbeddedSubfield real_subfield_in(const SimpleFactorDatum& factor, const CompositumComponent& comp) {
    if (!factor.cm) throw Error(ErrorKind::PreconditionViolation, "factor " + factor.name + " has no CM structure");
    FieldElement img = comp.embed_e.image(FieldElement(comp.embed_e.field(), factor.cm->real_gen.coords()));
    return {img, minimal_polynomial(factor.cm->real_gen)};
}

namespace {

struct Collector {
    ValidationReport& rep;
    void add(std::string path, std::string msg) { rep.violations.push_back({std::move(path), std::move(msg)}); }
};

bool divides(long a, long b) { return a != 0 && b % a == 0; }

void check_compositum(const SimpleFactorDatum& fac, const AbelianVarietyDatum& datum, const std::string& base,
                      Collector& c) {
    if (fac.compositum.empty()) {
        c.add(base, "at least one compositum component is required");
        return;
    }
    long total = 0;
    for (size_t i = 0; i < fac.compositum.size(); ++i) {
        const auto& comp = fac.compositum[i];
        const std::string p = base + "[" + std::to_string(i) + "]";
        if (!comp.field) {
            c.add(p, "missing field");
            continue;
        }
        if (comp.module_rank <= 0) c.add(p + ".module_rank", "must be positive");
        total += static_cast<long>(comp.field->degree()) * comp.module_rank;
        bool embeddings_ok = true;
        if (!comp.embed_e.over()->same_as(*comp.field) || !comp.embed_f.over()->same_as(*comp.field)) {
            c.add(p, "embeddings must live in the component field");
            embeddings_ok = false;
        }
        if (comp.embed_e.sub_min_poly() != fac.center->min_poly()) {
            c.add(p + ".embed_e", "embedded field differs from the centre E");
            embeddings_ok = false;
        }
        if (comp.embed_f.sub_min_poly() != datum.field_f->min_poly()) {
            c.add(p + ".embed_f", "embedded field differs from F");
            embeddings_ok = false;
        }
        if (!embeddings_ok) continue;
        // K_i must be generated by the images of E and F.
        std::vector<QVector> products;
        for (const auto& a : comp.embed_e.power_images())
            for (const auto& b : comp.embed_f.power_images()) products.push_back(comp.field->multiply(a, b));
        if (rank(QMatrix::from_columns(products, comp.field->degree())) != comp.field->degree())
            c.add(p, "component field is not generated by E and F");
        // A subfield of M_m(D) containing the centre has degree dividing m*d over it.
        const long rel = static_cast<long>(comp.field->degree()) / fac.e();
        if (!divides(rel, fac.power * fac.d))
            c.add(p, "[K:E] = " + std::to_string(rel) + " does not divide m*d = " + std::to_string(fac.power * fac.d));
    }
    if (total != 2 * fac.dim())
        c.add(base, "sum of [K_i:Q]*module_rank is " + std::to_string(total) + ", expected 2*m*dim = " +
                        std::to_string(2 * fac.dim()));
}

}  // namespace

ValidationReport validate(const AbelianVarietyDatum& datum) {
    ValidationReport rep;
    Collector c{rep};
    if (!datum.field_f) {
        c.add("field_f", "missing");
        return rep;
    }
    if (datum.factors.empty()) {
        c.add("factors", "at least one factor is required");
        return rep;
    }
    const long deg_f = datum.deg_f();
    const auto& conj = datum.field_f->embeddings().conjugate;
    rep.g = datum.g();
    rep.cm.resize(datum.factors.size());
    rep.r_i.assign(datum.factors.size(), 0);
    if (divides(deg_f, 2 * rep.g))
        rep.r = 2 * rep.g / deg_f;
    else
        c.add("field_f", "[F:Q] = " + std::to_string(deg_f) + " does not divide 2g = " + std::to_string(2 * rep.g));

    std::set<std::string> names;
    for (size_t k = 0; k < datum.factors.size(); ++k) {
        const auto& fac = datum.factors[k];
        const std::string base = "factors[" + std::to_string(k) + "]";
        if (fac.name.empty()) c.add(base + ".name", "empty name");
        if (!names.insert(fac.name).second) c.add(base + ".name", "duplicate name '" + fac.name + "'");
        if (fac.dim_y <= 0) c.add(base + ".dim", "must be positive");
        if (fac.power <= 0) c.add(base + ".power", "must be positive");
        if (fac.d <= 0) c.add(base + ".d", "must be positive");
        if (!fac.center) {
            c.add(base + ".center", "missing");
            continue;
        }
        if (fac.dim_y <= 0 || fac.power <= 0 || fac.d <= 0) continue;
        const long e = fac.e();
        const bool type4 = fac.albert_type == AlbertType::IV;

        switch (fac.albert_type) {
            case AlbertType::I:
                if (fac.d != 1) c.add(base + ".d", "type I requires d = 1");
                break;
            case AlbertType::II:
            case AlbertType::III:
                if (fac.d != 2) c.add(base + ".d", "types II and III require d = 2");
                break;
            case AlbertType::IV:
                break;
        }
        if (!type4) {
            if (!fac.center->is_totally_real()) c.add(base + ".center", "centre of a type I/II/III algebra must be totally real");
            if (fac.cm) c.add(base + ".cm", "CM structure is only allowed for type IV");
        } else if (!fac.cm) {
            c.add(base + ".cm", "type IV requires a CM structure");
        } else if (!fac.cm->field()->same_as(*fac.center)) {
            c.add(base + ".cm", "CM structure is not on the centre");
        } else {
            try {
                rep.cm[k] = verify_cm(*fac.cm);
            } catch (const Error& err) {
                c.add(base + ".cm", err.what());
            }
        }

        // Albert restrictions on dim Y.
        long need = 0;
        switch (fac.albert_type) {
            case AlbertType::I: need = e; break;
            case AlbertType::II:
            case AlbertType::III: need = 2 * e; break;
            case AlbertType::IV: need = (e / 2) * fac.d * fac.d; break;
        }
        if (type4 && e % 2 != 0) c.add(base + ".center", "a CM field has even degree");
        else if (!divides(need, fac.dim_y))
            c.add(base + ".dim", "dim Y = " + std::to_string(fac.dim_y) + " is not divisible by " + std::to_string(need));

        const long two_dim = 2 * fac.dim();
        if (!divides(deg_f, two_dim)) {
            c.add(base, "[F:Q] does not divide 2*m*dim = " + std::to_string(two_dim));
            continue;
        }
        const long ri = two_dim / deg_f;
        rep.r_i[k] = ri;
        if (fac.albert_type == AlbertType::III && fac.power >= 2 && (2 * fac.power * e) % deg_f != 0)
            c.add(base, "2m[E:Q]/[F:Q] is not an integer");

        const std::string mp = "multiplicities." + fac.name;
        if (fac.multiplicities.size() != static_cast<size_t>(deg_f)) {
            c.add(mp, "expected " + std::to_string(deg_f) + " entries, got " + std::to_string(fac.multiplicities.size()));
        } else {
            for (size_t s = 0; s < fac.multiplicities.size(); ++s) {
                const long n = fac.multiplicities[s], np = fac.multiplicities[conj[s]];
                const std::string sp = mp + "[" + std::to_string(s) + "]";
                if (n < 0) c.add(sp, "must be non-negative");
                if (conj[s] == s) {
                    if (2 * n != ri) c.add(sp, "real embedding needs n = r_i/2 = " + std::to_string(ri) + "/2");
                } else if (s < conj[s]) {
                    if (n + np != ri)
                        c.add(sp, "n_sigma + n_sigma' = " + std::to_string(n + np) + ", expected r_i = " + std::to_string(ri));
                    else if (!type4 && n != np)
                        c.add(sp, "types I/II/III force n_sigma = n_sigma'");
                }
            }
        }
        check_compositum(fac, datum, "compositum." + fac.name, c);
    }
    return rep;
}

ValidationReport require_valid(const AbelianVarietyDatum& datum) {
    ValidationReport rep = validate(datum);
    if (!rep.ok()) throw Error(ErrorKind::InvalidInput, rep.summary());
    return rep;
}

std::vector<long> total_multiplicities(const AbelianVarietyDatum& datum) {
    std::vector<long> out(static_cast<size_t>(datum.deg_f()), 0);
    for (const auto& f : datum.factors)
        for (size_t s = 0; s < out.size() && s < f.multiplicities.size(); ++s) out[s] += f.multiplicities[s];
    return out;
}

}  // namespace weil

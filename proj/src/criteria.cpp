#include "weil/criteria.hpp"

#include "weil/error.hpp"

#include <atomic>
#include <exception>
#include <thread>

namespace weil {

const char* const kTateNote =
    "If X is defined over a number field, the same verdicts hold with Tate classes in place of Hodge classes.";

std::string_view to_string(FactorKind k) { return k == FactorKind::Decomposable ? "Decomposable" : "Exceptional"; }

std::string_view to_string(CaseTag c) {
    switch (c) {
        case CaseTag::TypeI: return "type-I";
        case CaseTag::TypeII: return "type-II";
        case CaseTag::TypeIIIm1: return "type-III-m1-containment";
        case CaseTag::TypeIIIParity: return "type-III-parity";
        case CaseTag::TypeIVd1m1: return "type-IV-d1-m1-containment";
        case CaseTag::TypeIVTheta: return "type-IV-theta";
    }
    return "?";
}

std::string_view to_string(Overall o) {
    switch (o) {
        case Overall::NotHodge: return "NotHodge";
        case Overall::Decomposable: return "Decomposable";
        case Overall::Exceptional: return "Exceptional";
    }
    return "?";
}

HodgeVerdict hodge_test(const std::vector<long>& n, const std::vector<size_t>& conjugate) {
    if (n.size() != conjugate.size()) throw Error(ErrorKind::DimensionMismatch, "multiplicity count differs from [F:Q]");
    for (size_t s = 0; s < n.size(); ++s)
        if (n[s] != n[conjugate[s]]) return {false, s};
    return {true, std::nullopt};
}

ThetaResult theta_map(const SimpleFactorDatum& factor, const FieldPtr& F,
                      const std::vector<CompositumComponent>& components) {
    if (factor.albert_type != AlbertType::IV || !factor.cm)
        throw Error(ErrorKind::PreconditionViolation, "theta is defined for type IV factors with a CM structure");
    const std::vector<FieldElement> minus = minus_part_basis(*factor.cm);
    const size_t df = F->degree();
    ThetaResult out;
    out.matrix = QMatrix(df, minus.size());
    for (const auto& comp : components) {
        if (comp.embed_f.sub_min_poly() != F->min_poly())
            throw Error(ErrorKind::EmbeddingInconsistency, "component embeds a different field F");
        const FieldElement eta_img = comp.embed_e.image(FieldElement(comp.embed_e.field(), factor.cm->eta.coords()));
        const FieldElement eta2_img =
            comp.embed_e.image(FieldElement(comp.embed_e.field(), (factor.cm->eta * factor.cm->eta).coords()));
        if (eta_img * eta_img != eta2_img)
            throw Error(ErrorKind::EmbeddingInconsistency, "embedding of E is not multiplicative");
        for (size_t j = 0; j < minus.size(); ++j) {
            const FieldElement img = comp.embed_e.image(FieldElement(comp.embed_e.field(), minus[j].coords()));
            const FieldElement tr = relative_trace(comp.embed_f, img);
            for (size_t i = 0; i < df; ++i) out.matrix(i, j) += comp.module_rank * tr.coords()[i];
        }
    }
    out.rank = rank(out.matrix);
    out.is_zero = out.matrix.is_zero();
    return out;
}

namespace {

long r_of(const SimpleFactorDatum& f, const FieldPtr& F) {
    const long deg = static_cast<long>(F->degree());
    if ((2 * f.dim()) % deg != 0) throw Error(ErrorKind::InvalidInput, "[F:Q] does not divide 2*m*dim");
    return 2 * f.dim() / deg;
}

struct Containment {
    bool contained = true;
    bool equal = false;
};

// F inside B in every component; B given per component.
template <class SubOf>
Containment contained_in(const std::vector<CompositumComponent>& comps, const FieldPtr& F, size_t b_degree, SubOf sub) {
    Containment c;
    for (const auto& comp : comps)
        if (!subfield_contains(sub(comp), comp.embed_f)) c.contained = false;
    c.equal = c.contained && F->degree() == b_degree;
    return c;
}

}  // namespace

FactorVerdict classify_factor(const SimpleFactorDatum& factor, const FieldPtr& F,
                              const std::vector<CompositumComponent>& components) {
    const long ri = r_of(factor, F);
    if (ri % 2 != 0) throw Error(ErrorKind::PreconditionViolation, "factor " + factor.name + " has odd r_i");
    if (!hodge_test(factor.multiplicities, F->embeddings().conjugate).all_hodge)
        throw Error(ErrorKind::PreconditionViolation, "factor " + factor.name + " is not Hodge");
    if (components.empty()) throw Error(ErrorKind::InvalidInput, "no compositum components for " + factor.name);

    FactorVerdict v;
    auto set_containment = [&](const Containment& c) {
        v.f_contained = c.contained;
        v.f_equal = c.equal;
        v.kind = c.contained ? FactorKind::Decomposable : FactorKind::Exceptional;
        const bool literal_exceptional = c.contained && !c.equal;
        v.literal_reading_differs = literal_exceptional != (v.kind == FactorKind::Exceptional);
    };

    switch (factor.albert_type) {
        case AlbertType::I:
            v.case_tag = CaseTag::TypeI;
            return v;
        case AlbertType::II:
            v.case_tag = CaseTag::TypeII;
            return v;
        case AlbertType::III:
            if (factor.power == 1) {
                v.case_tag = CaseTag::TypeIIIm1;
                set_containment(contained_in(components, F, factor.center->degree(),
                                             [](const CompositumComponent& c) { return c.embed_e; }));
            } else {
                v.case_tag = CaseTag::TypeIIIParity;
                const long num = 2 * factor.power * factor.e(), den = static_cast<long>(F->degree());
                if (num % den != 0) throw Error(ErrorKind::InvalidInput, "2m[E:Q]/[F:Q] is not an integer");
                v.parity_value = num / den;
                v.kind = *v.parity_value % 2 ? FactorKind::Exceptional : FactorKind::Decomposable;
            }
            return v;
        case AlbertType::IV:
            if (!factor.cm) throw Error(ErrorKind::InvalidInput, "type IV factor without CM structure");
            if (factor.d == 1 && factor.power == 1) {
                v.case_tag = CaseTag::TypeIVd1m1;
                set_containment(contained_in(components, F, factor.center->degree() / 2,
                                             [&](const CompositumComponent& c) { return real_subfield_in(factor, c); }));
            } else {
                v.case_tag = CaseTag::TypeIVTheta;
                v.theta = theta_map(factor, F, components);
                v.kind = v.theta->is_zero ? FactorKind::Decomposable : FactorKind::Exceptional;
            }
            return v;
    }
    throw Error(ErrorKind::InvalidInput, "unknown Albert type");
}

ClassificationReport classify(const AbelianVarietyDatum& datum, unsigned threads) {
    const ValidationReport val = require_valid(datum);
    const FieldPtr& F = datum.field_f;
    const auto& conj = F->embeddings().conjugate;

    ClassificationReport rep;
    rep.g = val.g;
    rep.r = val.r;
    rep.deg_f = datum.deg_f();
    rep.multiplicities = total_multiplicities(datum);
    rep.hodge = hodge_test(rep.multiplicities, conj);
    rep.tate_note = kTateNote;

    const size_t nf = datum.factors.size();
    rep.factors.resize(nf);
    std::vector<std::exception_ptr> errors(nf);
    auto work = [&](size_t k) {
        try {
            const auto& fac = datum.factors[k];
            FactorReport& fr = rep.factors[k];
            fr.name = fac.name;
            fr.r_i = val.r_i[k];
            fr.hodge = hodge_test(fac.multiplicities, conj);
            if (fr.hodge.all_hodge) fr.verdict = classify_factor(fac, F, fac.compositum);
            fr.b = b_structure(fac.albert_type, fac.power, fac.d);
            fr.gdiv = gdiv_structure(fac.albert_type, fac.power, fac.d, fac.dim(), fac.e(), fac.e0());
        } catch (...) {
            errors[k] = std::current_exception();
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(nf)));
    if (workers == 1) {
        for (size_t k = 0; k < nf; ++k) work(k);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (size_t k; (k = next.fetch_add(1)) < nf;) work(k);
            });
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    if (!rep.hodge.all_hodge) {
        rep.overall = Overall::NotHodge;
    } else {
        bool all_decomposable = true;
        for (const auto& fr : rep.factors)
            if (!fr.hodge.all_hodge || !fr.verdict || fr.verdict->kind != FactorKind::Decomposable)
                all_decomposable = false;
        rep.overall = all_decomposable ? Overall::Decomposable : Overall::Exceptional;
    }
    return rep;
}

namespace {

struct IntersectionSummary {
    bool fixed = true;
    bool totally_real = true;
    size_t degree = 0;
};

IntersectionSummary intersect_all(const SimpleFactorDatum& factor, const std::vector<CompositumComponent>& comps) {
    const CMVerification cm = verify_cm(*factor.cm);
    IntersectionSummary s;
    for (const auto& comp : comps) {
        SubfieldIntersection x = subfield_intersection(comp.embed_e, comp.embed_f, {&cm, &comp.embed_e});
        if (*x.conjugation_fixed != x.totally_real)
            throw Error(ErrorKind::InconsistencyDetected,
                        "intersection fixed by conjugation but not totally real (or the reverse)");
        s.fixed = s.fixed && *x.conjugation_fixed;
        s.totally_real = s.totally_real && x.totally_real;
        s.degree = x.basis.size();
    }
    return s;
}

void require_type4(const SimpleFactorDatum& factor) {
    if (factor.albert_type != AlbertType::IV || !factor.cm)
        throw Error(ErrorKind::PreconditionViolation, "factor " + factor.name + " is not of type IV");
}

}  // namespace

RemarkReport check_remark_ii(const SimpleFactorDatum& factor, const FieldPtr& F,
                             const std::vector<CompositumComponent>& components) {
    require_type4(factor);
    if (factor.d < 2 && factor.power < 2)
        throw Error(ErrorKind::PreconditionViolation, "needs d >= 2 or m >= 2");
    RemarkReport r;
    r.applicable = true;
    r.theta_zero = theta_map(factor, F, components).is_zero;
    IntersectionSummary s = intersect_all(factor, components);
    r.intersection_conjugation_fixed = s.fixed;
    r.intersection_totally_real = s.totally_real;
    r.intersection_degree = s.degree;
    r.holds = !r.theta_zero || s.fixed;
    r.detail = r.theta_zero ? (s.fixed ? "theta = 0 and E cap F is totally real" : "theta = 0 but E cap F is not totally real")
                            : "theta != 0 (implication vacuous)";
    if (!r.holds) throw Error(ErrorKind::InconsistencyDetected, r.detail);
    return r;
}

RemarkReport check_remark_iii(const SimpleFactorDatum& factor, const FieldPtr& F,
                              const std::vector<CompositumComponent>& components, bool galois_assertion) {
    require_type4(factor);
    RemarkReport r;
    if (!galois_assertion) {
        r.detail = "Galois hypothesis not asserted; nothing checked";
        return r;
    }
    IntersectionSummary s = intersect_all(factor, components);
    r.intersection_conjugation_fixed = s.fixed;
    r.intersection_totally_real = s.totally_real;
    r.intersection_degree = s.degree;
    r.theta_zero = theta_map(factor, F, components).is_zero;
    if (!s.fixed) {
        r.detail = "E cap F is not totally real (hypothesis fails)";
        return r;
    }
    r.applicable = true;
    r.holds = r.theta_zero;
    r.detail = r.holds ? "theta = 0 as required" : "E cap F totally real, Galois asserted, but theta != 0";
    if (!r.holds) throw Error(ErrorKind::InconsistencyDetected, r.detail);
    return r;
}

MonotonicityReport check_monotonicity(const AbelianVarietyDatum& df, const AbelianVarietyDatum& dfp,
                                      const EmbeddedSubfield& f_in_fp) {
    if (!f_in_fp.over()->same_as(*dfp.field_f) || f_in_fp.sub_min_poly() != df.field_f->min_poly())
        throw Error(ErrorKind::InvalidInput, "embedding does not map F into F'");
    if (df.factors.size() != dfp.factors.size()) throw Error(ErrorKind::InvalidInput, "data have different factors");
    const std::vector<size_t> restriction = restrict_embeddings(f_in_fp);
    for (size_t k = 0; k < df.factors.size(); ++k) {
        const auto& a = df.factors[k];
        const auto& b = dfp.factors[k];
        if (a.name != b.name || a.albert_type != b.albert_type || a.dim_y != b.dim_y || a.power != b.power || a.d != b.d)
            throw Error(ErrorKind::InvalidInput, "factor " + a.name + " differs between the data");
        std::vector<long> restricted(df.field_f->degree(), 0);
        for (size_t t = 0; t < b.multiplicities.size() && t < restriction.size(); ++t)
            restricted[restriction[t]] += b.multiplicities[t];
        if (restricted != a.multiplicities)
            throw Error(ErrorKind::InvalidInput, "multiplicities of F are not restrictions of those of F' for " + a.name);
    }
    const ClassificationReport rf = classify(df), rfp = classify(dfp);
    MonotonicityReport m;
    m.hodge_f = rf.overall != Overall::NotHodge;
    m.hodge_fprime = rfp.overall != Overall::NotHodge;
    m.decomposable_f = rf.overall == Overall::Decomposable;
    m.decomposable_fprime = rfp.overall == Overall::Decomposable;
    m.hodge_implication = !m.hodge_fprime || m.hodge_f;
    m.decomposability_implication = !m.decomposable_fprime || m.decomposable_f;
    if (!m.hodge_implication) throw Error(ErrorKind::InconsistencyDetected, "W_F' Hodge but W_F not Hodge");
    if (!m.decomposability_implication)
        throw Error(ErrorKind::InconsistencyDetected, "W_F' decomposable but W_F not decomposable");
    return m;
}

}  // namespace weil

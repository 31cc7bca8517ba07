#include "weil/cm.hpp"

#include "weil/error.hpp"

namespace weil {

namespace {

std::vector<QVector> powers_of(const FieldElement& a, size_t count) {
    std::vector<QVector> out;
    FieldElement p = FieldElement::one(a.field());
    for (size_t k = 0; k < count; ++k) {
        out.push_back(p.coords());
        p = p * a;
    }
    return out;
}

[[noreturn]] void not_cm(const std::string& what) { throw Error(ErrorKind::NotCM, what); }

}  // namespace

FieldElement CMVerification::conj(const FieldElement& a) const { return {a.field(), conjugation * a.coords()}; }

CMVerification verify_cm(const CMStructure& cm) {
    const FieldPtr& E = cm.field();
    if (!cm.real_gen.field()->same_as(*E)) not_cm("real_gen and eta live in different fields");
    const size_t n = E->degree();
    CMVerification out;

    out.real_min_poly = minimal_polynomial(cm.real_gen);
    out.e0 = static_cast<size_t>(out.real_min_poly.degree());
    if (2 * out.e0 != n) not_cm("Q(real_gen) does not have index 2 in E");
    if (sturm_count(out.real_min_poly) != out.e0) not_cm("E_0 = Q(real_gen) is not totally real");

    const std::vector<QVector> real_powers = powers_of(cm.real_gen, out.e0);
    const FieldElement delta = cm.eta * cm.eta;
    auto dc = span_membership(real_powers, delta.coords());
    if (!dc) not_cm("eta^2 does not lie in E_0");
    out.delta = Poly(*dc);

    // Totally negative: sign of delta at every (real) root of the E_0 polynomial.
    RootIsolation real_roots = isolate_roots(out.real_min_poly, Rational(1, 4));
    for (const auto& box : real_roots.boxes)
        if (sign_at_real_root(out.delta, out.real_min_poly, box.re_lo, box.re_hi) >= 0)
            not_cm("eta^2 is not totally negative");

    std::vector<QVector> cols = real_powers;
    for (const auto& v : real_powers) cols.push_back(E->multiply(cm.eta.coords(), v));
    const QMatrix P = QMatrix::from_columns(cols, n);
    if (rank(P) != n) not_cm("E is not generated by eta over E_0");
    QMatrix D = QMatrix::identity(n);
    for (size_t i = out.e0; i < n; ++i) D(i, i) = -1;
    out.conjugation = P * D * inverse(P);

    // c must be the field automorphism x -> c(x).
    const FieldElement cx = out.conj(FieldElement::gen(E));
    if (!FieldElement::from_poly(E, E->min_poly().compose(cx.as_poly())).is_zero())
        not_cm("conjugation does not map x to a root of the minimal polynomial");
    if (QMatrix::from_columns(powers_of(cx, n), n) != out.conjugation) not_cm("conjugation is not multiplicative");
    if (out.conjugation * out.conjugation != QMatrix::identity(n)) not_cm("conjugation is not an involution");

    const Poly h = cx.as_poly();
    for (long bits = 16;; bits *= 2) {
        if (bits > 4096) throw Error(ErrorKind::IllConditioned, "could not certify sigma o c = conj o sigma");
        RootIsolation roots = E->embeddings(pow2(-bits));
        out.embedding_conjugation.assign(n, 0);
        bool separated = true;
        for (size_t k = 0; k < n && separated; ++k) {
            ComplexInterval img = eval(h, roots.boxes[k].as_interval());
            size_t hits = 0;
            for (size_t j = 0; j < n; ++j)
                if (img.intersects(roots.boxes[j].as_interval())) {
                    out.embedding_conjugation[k] = j;
                    ++hits;
                }
            separated = hits == 1;
        }
        if (!separated) continue;
        for (size_t k = 0; k < n; ++k)
            if (out.embedding_conjugation[k] != roots.conjugate[k] || roots.conjugate[k] == k)
                not_cm("sigma o c differs from complex conjugation for embedding " + std::to_string(k));
        break;
    }
    return out;
}

EmbeddedSubfield real_subfield(const CMStructure& cm) { return {cm.real_gen, minimal_polynomial(cm.real_gen)}; }

std::vector<FieldElement> minus_part_basis(const CMStructure& cm) {
    const size_t e0 = cm.field()->degree() / 2;
    std::vector<FieldElement> out;
    FieldElement p = cm.eta;
    for (size_t i = 0; i < e0; ++i) {
        out.push_back(p);
        p = p * cm.real_gen;
    }
    return out;
}

SubfieldIntersection subfield_intersection(const EmbeddedSubfield& A, const EmbeddedSubfield& B,
                                           const ConjugationContext& ctx) {
    if (!A.over()->same_as(*B.over())) throw Error(ErrorKind::FieldMismatch, "subfields of different fields");
    const FieldPtr& K = A.over();
    SubfieldIntersection out;
    out.basis = subspace_intersection(A.power_images(), B.power_images());
    for (size_t i = 0; i < out.basis.size(); ++i)
        for (size_t j = i; j < out.basis.size(); ++j)
            if (!span_membership(out.basis, K->multiply(out.basis[i], out.basis[j])))
                throw Error(ErrorKind::ClosureFailure, "intersection is not closed under multiplication");
    out.closed = true;
    out.field = subfield_from_basis(K, out.basis);
    out.totally_real = out.field->field()->is_totally_real();

    if (ctx.cm && ctx.embed_e) {
        const size_t dim = out.basis.size();
        QMatrix c(dim, dim);
        for (size_t j = 0; j < dim; ++j) {
            auto pre = ctx.embed_e->preimage(FieldElement(K, out.basis[j]));
            if (!pre) throw Error(ErrorKind::InvalidInput, "intersection is not contained in E");
            FieldElement img = ctx.embed_e->image(ctx.cm->conj(*pre));
            auto coords = span_membership(out.basis, img.coords());
            if (!coords) throw Error(ErrorKind::ClosureFailure, "conjugation does not preserve the intersection");
            for (size_t i = 0; i < dim; ++i) c(i, j) = (*coords)[i];
        }
        out.conjugation_fixed = c == QMatrix::identity(dim);
        out.conjugation = std::move(c);
    }
    return out;
}

}  // namespace weil

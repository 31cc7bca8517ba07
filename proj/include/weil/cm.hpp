#pragma once

#include "weil/number_field.hpp"

#include <optional>
#include <vector>

namespace weil {

/// E = E_0(eta) with E_0 = Q(real_gen) totally real and eta^2 in E_0
/// totally negative.
struct CMStructure {
    FieldElement real_gen;
    FieldElement eta;

    const FieldPtr& field() const { return eta.field(); }
};

struct CMVerification {
    size_t e0 = 0;
    Poly real_min_poly;           // minimal polynomial of real_gen
    Poly delta;                   // eta^2 as a polynomial in real_gen
    QMatrix conjugation;          // complex conjugation c on the power basis of E
    std::vector<size_t> embedding_conjugation;  // sigma_k o c = sigma_{this[k]}

    FieldElement conj(const FieldElement& a) const;
};

/// Throws Error(NotCM) naming the failed invariant.
CMVerification verify_cm(const CMStructure& cm);

/// E_0 as an embedded subfield of E.
EmbeddedSubfield real_subfield(const CMStructure& cm);

/// {eta * real_gen^i : i < e0}.
std::vector<FieldElement> minus_part_basis(const CMStructure& cm);

struct ConjugationContext {
    const CMVerification* cm = nullptr;
    const EmbeddedSubfield* embed_e = nullptr;  // E inside the common ambient field
};

struct SubfieldIntersection {
    std::vector<QVector> basis;   // Q-basis inside the ambient field
    bool closed = false;          // products of basis elements stay in the span
    std::optional<EmbeddedSubfield> field;
    bool totally_real = false;
    std::optional<QMatrix> conjugation;  // restriction of c in the basis above
    std::optional<bool> conjugation_fixed;
};

/// A cap B inside the common ambient field. Throws ClosureFailure.
SubfieldIntersection subfield_intersection(const EmbeddedSubfield& A, const EmbeddedSubfield& B,
                                           const ConjugationContext& ctx = {});

}  // namespace weil

#pragma once

#include "weil/av_model.hpp"
#include "weil/tables.hpp"

#include <optional>
#include <string>
#include <vector>

namespace weil {

struct HodgeVerdict {
    bool all_hodge = true;
    std::optional<size_t> witness;  // first sigma with n_sigma != n_sigma'
};

/// AllHodge iff n_sigma = n_sigma' for every conjugate pair.
HodgeVerdict hodge_test(const std::vector<long>& multiplicities, const std::vector<size_t>& conjugate);

struct ThetaResult {
    QMatrix matrix;  // [F:Q] x e_0: column j = theta(eta * real_gen^j) in the power basis of F
    size_t rank = 0;
    bool is_zero = true;
};

/// theta(alpha) = sum_i module_rank_i * Tr_{K_i/F}(iota_i(alpha)) on the
/// minus part of E. Requires a type IV factor with a CM structure.
ThetaResult theta_map(const SimpleFactorDatum& factor, const FieldPtr& F,
                      const std::vector<CompositumComponent>& components);

enum class FactorKind { Decomposable, Exceptional };
std::string_view to_string(FactorKind k);

enum class CaseTag { TypeI, TypeII, TypeIIIm1, TypeIIIParity, TypeIVd1m1, TypeIVTheta };
std::string_view to_string(CaseTag c);

struct FactorVerdict {
    FactorKind kind = FactorKind::Decomposable;
    CaseTag case_tag = CaseTag::TypeI;
    std::optional<ThetaResult> theta;
    std::optional<long> parity_value;      // 2m[E:Q]/[F:Q]
    std::optional<bool> f_contained;       // F inside E (III, m=1) or E_0 (IV, d=m=1)
    std::optional<bool> f_equal;           // F equal to that field
    bool literal_reading_differs = false;  // "proper subfield" reading gives the other verdict
};

/// Throws PreconditionViolation if r_i is odd or the factor is not Hodge.
FactorVerdict classify_factor(const SimpleFactorDatum& factor, const FieldPtr& F,
                              const std::vector<CompositumComponent>& components);

enum class Overall { NotHodge, Decomposable, Exceptional };
std::string_view to_string(Overall o);

struct FactorReport {
    std::string name;
    long r_i = 0;
    HodgeVerdict hodge;
    std::optional<FactorVerdict> verdict;  // only for Hodge factors
    BStructure b;
    GdivStructure gdiv;
};

struct ClassificationReport {
    long g = 0;
    long r = 0;
    long deg_f = 0;
    std::vector<long> multiplicities;  // totals over the factors
    HodgeVerdict hodge;
    std::vector<FactorReport> factors;
    Overall overall = Overall::NotHodge;
    std::string tate_note;
};

extern const char* const kTateNote;

/// Validates, then applies the product rule. Factors are classified on up
/// to `threads` worker threads; the report does not depend on the count.
ClassificationReport classify(const AbelianVarietyDatum& datum, unsigned threads = 1);

struct RemarkReport {
    bool applicable = false;     // preconditions / hypotheses met
    bool theta_zero = false;
    bool intersection_conjugation_fixed = false;
    bool intersection_totally_real = false;
    size_t intersection_degree = 0;
    bool holds = true;
    std::string detail;
};

/// theta = 0 implies E cap F is fixed by conjugation. Throws
/// InconsistencyDetected on violation, PreconditionViolation if the factor
/// is not type IV with d >= 2 or m >= 2.
RemarkReport check_remark_ii(const SimpleFactorDatum& factor, const FieldPtr& F,
                             const std::vector<CompositumComponent>& components);

/// With the Galois hypothesis asserted and E cap F fixed by conjugation,
/// theta must vanish. Throws InconsistencyDetected otherwise.
RemarkReport check_remark_iii(const SimpleFactorDatum& factor, const FieldPtr& F,
                              const std::vector<CompositumComponent>& components, bool galois_assertion);

struct MonotonicityReport {
    bool hodge_f = false, hodge_fprime = false;
    bool decomposable_f = false, decomposable_fprime = false;
    bool hodge_implication = true;
    bool decomposability_implication = true;
};

/// F embedded in F' by `f_in_fprime`; both data describe the same factors.
/// Checks that the multiplicities of F are the restrictions of those of F'
/// (InvalidInput otherwise) and the two implications (InconsistencyDetected).
MonotonicityReport check_monotonicity(const AbelianVarietyDatum& datum_f, const AbelianVarietyDatum& datum_fprime,
                                      const EmbeddedSubfield& f_in_fprime);

}  // namespace weil

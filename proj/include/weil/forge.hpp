#pragma once

#include "weil/av_model.hpp"
#include "weil/criteria.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace weil {

/// Report fragments a fresh classification must reproduce.
struct ExpectedReport {
    Overall overall = Overall::NotHodge;
    bool all_hodge = false;
    std::vector<bool> factor_hodge;
    std::vector<std::optional<FactorKind>> factor_kinds;  // nullopt for non-Hodge factors
    std::optional<bool> theta_nonzero;                    // first factor, type IV only
    std::optional<bool> witness_found;
};

struct CertificateCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Record of a seeded candidate search and every exact check on the hit.
struct SearchCertificate {
    uint64_t seed = 0;
    size_t candidates_tried = 0;
    std::vector<std::string> parameters;
    std::vector<CertificateCheck> checks;

    bool all_passed() const;
};

struct Fixture {
    std::string name;
    AbelianVarietyDatum datum;
    ExpectedReport expected;
    std::vector<std::string> notes;
    std::optional<SearchCertificate> certificate;
};

Fixture weil_fourfold();
Fixture product_odd_ratios();
Fixture type1_surface();
/// n = 2: K = Q(sqrt y1, sqrt y2) for the roots of y^2 + b y + c.
/// n = 3: K = Q(sqrt y1, sqrt y2, sqrt y3) for a shifted cyclic cubic.
/// Throws SearchExhausted when no candidate in the pool passes.
Fixture remark_iv_triple(int n, uint64_t seed = 0);
Fixture remark_v_datum();

/// CLI names: weil-fourfold, type1-surface, product-odd, remark-iv-n2,
/// remark-iv-n3, remark-v.
const std::vector<std::string>& fixture_names();
/// Throws InvalidInput for an unknown name.
Fixture make_fixture(const std::string& name, uint64_t seed = 0);

/// Compares a fresh classification with `expected`; the first mismatch is
/// written to `why`.
bool self_test(const Fixture& fixture, std::string* why = nullptr);

/// p-adic non-square certificate for alpha in Q[x]/(f): f squarefree mod p,
/// f(x0) = 0 mod p and alpha(x0) a non-residue mod p.
struct LocalNonSquare {
    long prime = 0;
    long root = 0;
    long value = 0;
};
std::optional<LocalNonSquare> certify_nonsquare(const Poly& f, const QVector& alpha, long prime_bound = 5000);

/// A CM factor together with a field F inside a common compositum.
struct CompositumConfiguration {
    std::string family;
    std::vector<std::string> parameters;
    AbelianVarietyDatum datum;  // one type IV factor, m >= 2
    bool galois = true;         // E or F Galois over E cap F, by construction
};

/// Eight families cycled by index, parameters drawn from small pools.
CompositumConfiguration compositum_configuration(size_t index);
constexpr size_t kCompositumFamilies = 8;

}  // namespace weil

#pragma once

#include "weil/cm.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace weil {

enum class AlbertType { I, II, III, IV };

std::string_view to_string(AlbertType t);
/// "I".."IV"; nullopt otherwise.
std::optional<AlbertType> parse_albert_type(std::string_view s);

/// One field K_i of the compositum EF acting on a factor, with E and F
/// embedded, and the K_i-rank of the corresponding summand V_i.
struct CompositumComponent {
    FieldPtr field;
    EmbeddedSubfield embed_e;
    EmbeddedSubfield embed_f;
    long module_rank = 0;
};

/// Isogeny factor Y^m with D = End0(Y) of the given Albert type, centre E.
struct SimpleFactorDatum {
    std::string name;
    AlbertType albert_type = AlbertType::I;
    long dim_y = 0;
    long power = 1;
    long d = 1;
    FieldPtr center;
    std::optional<CMStructure> cm;
    std::vector<CompositumComponent> compositum;
    /// n_sigma indexed by the canonical embedding order of F.
    std::vector<long> multiplicities;

    long e() const { return static_cast<long>(center->degree()); }
    long e0() const { return albert_type == AlbertType::IV ? e() / 2 : e(); }
    long dim() const { return power * dim_y; }
};

struct AbelianVarietyDatum {
    std::vector<SimpleFactorDatum> factors;
    FieldPtr field_f;

    long g() const;
    long deg_f() const { return static_cast<long>(field_f->degree()); }
};

struct Violation {
    std::string path;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    long g = 0;
    long r = 0;
    std::vector<long> r_i;
    /// Per factor; present for verified type IV factors.
    std::vector<std::optional<CMVerification>> cm;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

/// Checks every structural invariant of the datum; never throws for bad data.
ValidationReport validate(const AbelianVarietyDatum& datum);

/// validate() that throws Error(InvalidInput) listing all violations.
ValidationReport require_valid(const AbelianVarietyDatum& datum);

/// n_sigma(X) = sum over factors.
std::vector<long> total_multiplicities(const AbelianVarietyDatum& datum);

/// E_0 inside K_i for a type IV factor (the image of real_gen).
EmbeddedSubfield real_subfield_in(const SimpleFactorDatum& factor, const CompositumComponent& comp);

}  // namespace weil

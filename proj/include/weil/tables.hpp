#pragma once

#include "weil/av_model.hpp"

#include <string>

namespace weil {

/// Centre K_B and algebra B generated by the Rosati-symmetric elements.
struct BStructure {
    std::string k_b;
    std::string b;
};

BStructure b_structure(AlbertType type, long m, long d);

/// Complexified divisor group: one factor per real embedding tau of E_0.
struct GdivStructure {
    std::string group;           // "Sp_{2k}", "O_{2k}" or "GL_{dk}"
    std::string k_formula;       // as tabulated, e.g. "2g/me"
    long k = 0;
    std::string representation;  // "St", "St+St" or "St+St^v"
    long tau_factors = 0;        // e_0
    long table_rep_dim = 0;      // dimension of the tabulated representation
    long rep_dim_per_tau = 0;    // dim V^(tau) = 2g/(m e_0)
    Integer component_group_order = 1;
    bool center_is_torus = false;
    long center_torus_rank = 0;
    std::string center;
};

/// g is dim X for X = Y^m. Throws InvalidInput when k is not an integer.
GdivStructure gdiv_structure(AlbertType type, long m, long d, long g, long e, long e0);

}  // namespace weil

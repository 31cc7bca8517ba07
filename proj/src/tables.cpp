#include "weil/tables.hpp"

#include "weil/error.hpp"

namespace weil {

BStructure b_structure(AlbertType type, long m, long d) {
    if (m < 1 || d < 1) throw Error(ErrorKind::InvalidInput, "m and d must be positive");
    switch (type) {
        case AlbertType::I: return {"E", "M_m(E)"};
        case AlbertType::II: return {"E", "M_m(D)"};
        case AlbertType::III:
            if (m == 1) return {"E", "E"};
            return {"E", "M_m(D)"};
        case AlbertType::IV:
            if (d >= 2) return {"E", "M_m(D)"};
            if (m == 1) return {"E_0", "E_0"};
            return {"E", "M_m(E)"};
    }
    throw Error(ErrorKind::InvalidInput, "unknown Albert type");
}

GdivStructure gdiv_structure(AlbertType type, long m, long d, long g, long e, long e0) {
    if (m < 1 || d < 1 || g < 1 || e < 1 || e0 < 1) throw Error(ErrorKind::InvalidInput, "invariants must be positive");
    GdivStructure s;
    long num = 0, den = 1;
    int rep_copies = 1;  // St contributes dim 2k (Sp, O) or dk (GL)
    switch (type) {
        case AlbertType::I:
            s.group = "Sp_{2k}", s.k_formula = "2g/me", num = 2 * g, den = m * e, s.representation = "St";
            break;
        case AlbertType::II:
            s.group = "Sp_{2k}", s.k_formula = "g/2me", num = g, den = 2 * m * e, s.representation = "St+St";
            rep_copies = 2;
            break;
        case AlbertType::III:
            if (m == 1) {
                s.group = "Sp_{2k}", s.k_formula = "2g/e", num = 2 * g, den = e, s.representation = "St";
            } else {
                s.group = "O_{2k}", s.k_formula = "g/2me", num = g, den = 2 * m * e, s.representation = "St+St";
                rep_copies = 2;
                mpz_ui_pow_ui(s.component_group_order.get_mpz_t(), 2, static_cast<unsigned long>(e0));
            }
            break;
        case AlbertType::IV:
            if (d == 1 && m == 1) {
                s.group = "Sp_{2k}", s.k_formula = "2g/e_0", num = 2 * g, den = e0, s.representation = "St";
            } else {
                s.group = "GL_{dk}", s.k_formula = "2g/med^2", num = 2 * g, den = m * e * d * d;
                s.representation = "St+St^v";
                rep_copies = 2;
                s.center_is_torus = true;
                s.center_torus_rank = e0;
            }
            break;
    }
    if (num % den != 0)
        throw Error(ErrorKind::InvalidInput, "k = " + s.k_formula + " = " + std::to_string(num) + "/" +
                                                 std::to_string(den) + " is not an integer");
    s.k = num / den;
    const long st_dim = s.group == "GL_{dk}" ? d * s.k : 2 * s.k;
    s.table_rep_dim = rep_copies * st_dim;
    s.tau_factors = e0;
    if ((2 * g) % (m * e0) != 0) throw Error(ErrorKind::InvalidInput, "2g/(m e_0) is not an integer");
    s.rep_dim_per_tau = 2 * g / (m * e0);
    s.center = s.center_is_torus ? "U_{K_B}: torus of rank e_0" : "U_{K_B}: finite";
    return s;
}

}  // namespace weil

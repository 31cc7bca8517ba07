#pragma once

#include "weil/av_model.hpp"
#include "weil/complex.hpp"

#include <cstdint>
#include <vector>

namespace weil {

/// Index-increasing r-subsets of {0..n-1} in lexicographic order.
class Subsets {
public:
    Subsets(size_t n, size_t r);
    size_t n() const { return n_; }
    size_t r() const { return r_; }
    size_t size() const { return all_.size(); }
    const std::vector<size_t>& operator[](size_t i) const { return all_[i]; }
    /// Position of a sorted subset.
    size_t index(const std::vector<size_t>& s) const;

private:
    size_t n_, r_;
    std::vector<std::vector<size_t>> all_;
    std::vector<std::vector<size_t>> binom_;
};

/// C(n, k), saturating at SIZE_MAX.
size_t binomial(size_t n, size_t k);

/// F = Q[x]/(f_minpoly) acting on V = Q^N through the image of x.
struct FRepresentation {
    size_t dim_v = 0;
    QMatrix f_action;
    Poly f_minpoly;

    size_t degree() const { return static_cast<size_t>(f_minpoly.degree()); }
    size_t r() const { return dim_v / degree(); }

    /// V = sum over factors and compositum components of K_i^{module_rank},
    /// F acting by multiplication with its image in each K_i.
    static FRepresentation from_datum(const AbelianVarietyDatum& datum);
};

/// Throws InvalidInput unless f(A) = 0 and deg f divides N.
void check_representation(const FRepresentation& rep);

/// Matrix of g(A) for a polynomial g.
QMatrix poly_action(const FRepresentation& rep, const Poly& g);

struct WeilSubspace {
    size_t r = 0;
    size_t wedge_dim = 0;             // C(N, r)
    std::vector<QVector> basis;       // w_{x^i}, i < [F:Q], on increasing r-tuples
    std::vector<QVector> f_basis;     // greedy F-basis of V used for det_F
    size_t rank = 0;
};

WeilSubspace weil_subspace(const FRepresentation& rep);

/// w_h(v_1..v_r) = Tr(h det_F(v)) for any h in F (coordinates in the power basis).
QVector weil_form(const FRepresentation& rep, const WeilSubspace& ws, const QVector& h);

/// Precomposing each basis form w_h with f on all arguments gives w_{f^r h}.
bool fstar_scaling_check(const FRepresentation& rep, const WeilSubspace& ws, const QVector& f);

/// The same law tested pointwise: for `samples` seeded tuples of random
/// integer vectors v, w_h(f v_1..f v_r) = w_{f^r h}(v) for every h = x^i.
/// Never touches the C(N, r)-dimensional space, so it scales to large N.
bool fstar_scaling_sampled(const FRepresentation& rep, const QVector& f, size_t samples, uint64_t seed);
/// Form composed with a linear map on all arguments.
QVector pullback(const QVector& form, const Subsets& tuples, const QMatrix& T);

struct ComplexStructureNum {
    QMatrix j;                     // real matrix, entries rounded to `precision` digits
    unsigned precision = 50;
    Rational tolerance;
    Rational residual_square;      // max |(J^2 + I)_ab|
    Rational residual_commute;     // max |(JA - AJ)_ab|
    Rational residual_imag;        // largest imaginary part discarded
    std::vector<QComplex> lambdas; // embeddings of the generator of F
};

/// J with +i on n_sigma dimensions of each sigma-isotypic part. Throws
/// InvalidInput for bad multiplicities, IllConditioned on large residuals.
ComplexStructureNum build_complex_structure(const FRepresentation& rep, const std::vector<long>& multiplicities,
                                            unsigned precision, const Rational& tolerance);

struct SigmaBidegree {
    size_t sigma = 0;
    long p = 0, q = 0;
    double k_numeric = 0;
    double residual = 0;
};

struct HodgeTypeResult {
    std::vector<SigmaBidegree> components;
    bool is_all_hodge = false;
    double max_residual = 0;
};

/// Bidegrees of the sigma-components of W_F (x) C read off from the action
/// of J on r-forms. Throws ToleranceExceeded when residuals are too large.
HodgeTypeResult hodge_type_oracle(const FRepresentation& rep, const WeilSubspace& ws, const ComplexStructureNum& cs,
                                  const Rational& tolerance);

/// phi_s(v, w) = phi(s v, w) on increasing pairs. Throws NotAlternating when
/// phi is not alternating/nondegenerate or s is not phi-symmetric.
std::vector<QVector> divisor_forms(const FRepresentation& rep, const QMatrix& polarization,
                                   const std::vector<QMatrix>& symmetric);

/// Exterior product of a p-form and a q-form on Q^n.
QVector wedge(const QVector& a, size_t p, const QVector& b, size_t q, size_t n);

struct WitnessResult {
    bool found = false;
    std::vector<std::vector<size_t>> monomials;  // multisets of divisor-form indices
    std::vector<QVector> coefficients;           // per basis vector of W_F, when found
    size_t products_rank = 0;
    size_t augmented_rank = 0;                   // rank with W_F appended
    std::string caveat;
};

/// Is W_F inside the span of all (r/2)-fold products of the divisor forms?
/// Throws PreconditionViolation (odd r), CombinatorialBlowup (C(N,r) > cap).
WitnessResult decomposability_witness(const WeilSubspace& ws, size_t dim_v, const std::vector<QVector>& forms,
                                      size_t cap = 5000);

/// Polarization and Rosati-symmetric elements for a single simple factor
/// (m = d = 1, type I or IV, F inside E with K = E).
struct WitnessModel {
    FRepresentation rep;
    QMatrix polarization;
    std::vector<QMatrix> symmetric;
};

/// Throws PreconditionViolation for unsupported data.
WitnessModel witness_model(const AbelianVarietyDatum& datum);

}  // namespace weil

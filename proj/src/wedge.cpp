#include "weil/wedge.hpp"

#include "weil/error.hpp"
#include "weil/number_field.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <random>

namespace weil {

size_t binomial(size_t n, size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    size_t c = 1;
    for (size_t i = 1; i <= k; ++i) {
        const size_t num = n - k + i;
        if (c > SIZE_MAX / num) return SIZE_MAX;
        c = c * num / i;
    }
    return c;
}

Subsets::Subsets(size_t n, size_t r) : n_(n), r_(r) {
    if (r > n) return;
    binom_.assign(n + 1, std::vector<size_t>(r + 1, 0));
    for (size_t a = 0; a <= n; ++a)
        for (size_t b = 0; b <= r; ++b) binom_[a][b] = binomial(a, b);
    std::vector<size_t> cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (cur.size() == r) {
            all_.push_back(cur);
            return;
        }
        for (size_t s = start; s + (r - cur.size()) <= n; ++s) {
            cur.push_back(s);
            rec(s + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

// Lexicographic rank: count subsets that agree on a prefix and have a
// smaller next element.
size_t Subsets::index(const std::vector<size_t>& s) const {
    size_t idx = 0, prev = 0;
    for (size_t k = 0; k < s.size(); ++k) {
        for (size_t v = (k ? prev + 1 : 0); v < s[k]; ++v) idx += binom_[n_ - v - 1][r_ - k - 1];
        prev = s[k];
    }
    return idx;
}

namespace {

QMatrix block_diag(const QMatrix& m, size_t copies) {
    const size_t n = m.rows();
    QMatrix out(n * copies, n * copies);
    for (size_t c = 0; c < copies; ++c)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) out(c * n + i, c * n + j) = m(i, j);
    return out;
}

Rational max_abs(const QMatrix& m) {
    Rational best(0);
    for (const auto& x : m.entries()) best = std::max(best, abs(x));
    return best;
}

// Columns A^i b_j (j-major) for an F-basis b of V chosen greedily from e_0, e_1, ...
struct FCoordinates {
    std::vector<QVector> f_basis;
    QMatrix P, Pinv;
};

FCoordinates f_coordinates(const FRepresentation& rep) {
    const size_t N = rep.dim_v, d = rep.degree();
    FCoordinates fc;
    std::vector<QVector> cols;
    // echelon rows of the accepted span, each with its pivot position
    std::vector<std::pair<size_t, QVector>> echelon;
    const auto reduce = [](const std::vector<std::pair<size_t, QVector>>& rows, QVector v) {
        for (const auto& [p, row] : rows) {
            if (v[p] == 0) continue;
            const Rational c = v[p] / row[p];
            for (size_t i = 0; i < v.size(); ++i)
                if (row[i] != 0) v[i] -= c * row[i];
        }
        return v;
    };
    for (size_t s = 0; s < N && cols.size() < N; ++s) {
        QVector v(N);
        v[s] = 1;
        auto trial = echelon;
        std::vector<QVector> krylov;
        bool independent = true;
        for (size_t i = 0; i < d && independent; ++i) {
            const QVector red = reduce(trial, v);
            const auto nz = std::find_if(red.begin(), red.end(), [](const Rational& x) { return x != 0; });
            if (nz == red.end()) {
                independent = false;
                break;
            }
            trial.emplace_back(static_cast<size_t>(nz - red.begin()), red);
            krylov.push_back(v);
            v = rep.f_action * v;
        }
        if (!independent) continue;
        echelon = std::move(trial);
        for (auto& k : krylov) cols.push_back(std::move(k));
        QVector e(N);
        e[s] = 1;
        fc.f_basis.push_back(std::move(e));
    }
    if (cols.size() != N) throw Error(ErrorKind::RankDefect, "V is not a free F-module on the standard basis");
    fc.P = QMatrix::from_columns(cols, N);
    fc.Pinv = inverse(fc.P);
    return fc;
}

// Fraction-free (Bareiss) elimination: every intermediate entry is a minor,
// which keeps coefficient growth in check.
FieldElement det_f(std::vector<std::vector<FieldElement>> m) {
    const size_t r = m.size();
    const FieldPtr& K = m[0][0].field();
    FieldElement prev = FieldElement::one(K);
    bool negate = false;
    for (size_t c = 0; c < r; ++c) {
        size_t p = c;
        while (p < r && m[p][c].is_zero()) ++p;
        if (p == r) return FieldElement::zero(K);
        if (p != c) {
            std::swap(m[p], m[c]);
            negate = !negate;
        }
        const FieldElement prev_inv = prev.inverse();
        for (size_t i = c + 1; i < r; ++i) {
            for (size_t j = c + 1; j < r; ++j) m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) * prev_inv;
            m[i][c] = FieldElement::zero(K);
        }
        prev = m[c][c];
    }
    return negate ? -m[r - 1][r - 1] : m[r - 1][r - 1];
}

// det_F of the F-coordinates of e_I for every increasing tuple I.
std::vector<FieldElement> tuple_determinants(const FRepresentation& rep, const FCoordinates& fc, const Subsets& tuples,
                                             const FieldPtr& F) {
    const size_t d = rep.degree(), r = rep.r();
    std::vector<std::vector<FieldElement>> coords;  // coords[s][j]
    for (size_t s = 0; s < rep.dim_v; ++s) {
        QVector c = fc.Pinv.column(s);
        std::vector<FieldElement> t;
        for (size_t j = 0; j < r; ++j) t.emplace_back(F, QVector(c.begin() + long(j * d), c.begin() + long((j + 1) * d)));
        coords.push_back(std::move(t));
    }
    std::vector<FieldElement> out;
    out.reserve(tuples.size());
    for (size_t t = 0; t < tuples.size(); ++t) {
        std::vector<std::vector<FieldElement>> m(r, std::vector<FieldElement>(r, FieldElement::zero(F)));
        for (size_t k = 0; k < r; ++k)
            for (size_t j = 0; j < r; ++j) m[j][k] = coords[tuples[t][k]][j];
        out.push_back(det_f(std::move(m)));
    }
    return out;
}

QVector forms_from_dets(const std::vector<FieldElement>& dets, const FieldElement& h) {
    QVector w(dets.size());
    for (size_t t = 0; t < dets.size(); ++t) w[t] = trace_abs(h * dets[t]);
    return w;
}

// Indices grouped into the blocks of T (connected components of its
// non-zero pattern).
std::vector<size_t> block_ids(const QMatrix& T) {
    const size_t n = T.rows();
    std::vector<size_t> parent(n);
    for (size_t i = 0; i < n; ++i) parent[i] = i;
    const std::function<size_t(size_t)> find = [&](size_t i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (T(i, j) != 0) parent[find(i)] = find(j);
    std::vector<size_t> id(n);
    for (size_t i = 0; i < n; ++i) id[i] = find(i);
    return id;
}

// (f^* w)(e_I) = sum_J w(e_J) det T[J, I] for each form w. T is split
// into blocks; det T[J, I] vanishes unless J and I meet every block equally
// often, and is then a signed product of memoized block minors.
std::vector<QVector> pullback_all(const std::vector<QVector>& forms, const Subsets& tuples, const QMatrix& T) {
    const std::vector<size_t> block = block_ids(T);
    std::map<size_t, size_t> block_index;
    for (size_t b : block) block_index.emplace(b, block_index.size());
    const size_t nb = block_index.size();

    // per tuple: block counts, the id of each block's part, and the sign of
    // the stable sort by block
    struct Split {
        std::vector<size_t> counts, part;
        int sign = 1;
    };
    std::vector<std::map<std::vector<size_t>, size_t>> part_ids(nb);
    std::vector<std::vector<std::vector<size_t>>> parts_of(nb);
    std::vector<Split> split(tuples.size());
    for (size_t t = 0; t < tuples.size(); ++t) {
        std::vector<size_t> bt;
        for (size_t x : tuples[t]) bt.push_back(block_index[block[x]]);
        std::vector<std::vector<size_t>> parts(nb);
        for (size_t a = 0; a < bt.size(); ++a) parts[bt[a]].push_back(tuples[t][a]);
        size_t inversions = 0;
        for (size_t a = 0; a < bt.size(); ++a)
            for (size_t c = a + 1; c < bt.size(); ++c)
                if (bt[a] > bt[c]) ++inversions;
        Split& sp = split[t];
        sp.sign = inversions % 2 ? -1 : 1;
        for (size_t b = 0; b < nb; ++b) {
            sp.counts.push_back(parts[b].size());
            const auto [it, fresh] = part_ids[b].emplace(parts[b], parts_of[b].size());
            if (fresh) parts_of[b].push_back(parts[b]);
            sp.part.push_back(it->second);
        }
    }
    std::vector<std::map<std::pair<size_t, size_t>, Rational>> memo(nb);
    const auto block_minor = [&](size_t b, size_t pj, size_t pi) -> Rational {
        const auto key = std::make_pair(pj, pi);
        const auto it = memo[b].find(key);
        if (it != memo[b].end()) return it->second;
        const auto& J = parts_of[b][pj];
        const auto& I = parts_of[b][pi];
        Rational d = 1;
        if (!J.empty()) {
            QMatrix m(J.size(), J.size());
            for (size_t x = 0; x < J.size(); ++x)
                for (size_t y = 0; y < I.size(); ++y) m(x, y) = T(J[x], I[y]);
            d = determinant(m);
        }
        memo[b].emplace(key, d);
        return d;
    };

    std::map<std::vector<size_t>, std::vector<size_t>> support;  // keyed by block counts
    for (size_t j = 0; j < tuples.size(); ++j)
        for (const auto& w : forms)
            if (w[j] != 0) {
                support[split[j].counts].push_back(j);
                break;
            }
    std::vector<QVector> out(forms.size(), QVector(tuples.size()));
    for (size_t i = 0; i < tuples.size(); ++i) {
        const auto it = support.find(split[i].counts);
        if (it == support.end()) continue;
        for (size_t j : it->second) {
            Rational m = split[i].sign * split[j].sign;
            for (size_t b = 0; b < nb && m != 0; ++b) m *= block_minor(b, split[j].part[b], split[i].part[b]);
            if (m == 0) continue;
            for (size_t k = 0; k < forms.size(); ++k)
                if (forms[k][j] != 0) out[k][i] += forms[k][j] * m;
        }
    }
    return out;
}

}  // namespace

FRepresentation FRepresentation::from_datum(const AbelianVarietyDatum& datum) {
    std::vector<QMatrix> blocks;
    size_t N = 0;
    for (const auto& fac : datum.factors)
        for (const auto& comp : fac.compositum) {
            QMatrix b = block_diag(comp.embed_f.gen_image().mult_matrix(), static_cast<size_t>(comp.module_rank));
            N += b.rows();
            blocks.push_back(std::move(b));
        }
    QMatrix A(N, N);
    size_t off = 0;
    for (const auto& b : blocks) {
        for (size_t i = 0; i < b.rows(); ++i)
            for (size_t j = 0; j < b.cols(); ++j) A(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    FRepresentation rep{N, std::move(A), datum.field_f->min_poly()};
    check_representation(rep);
    return rep;
}

QMatrix poly_action(const FRepresentation& rep, const Poly& g) {
    QMatrix acc(rep.dim_v, rep.dim_v);
    const auto& c = g.coeffs();
    for (size_t k = c.size(); k-- > 0;) acc = acc * rep.f_action + c[k] * QMatrix::identity(rep.dim_v);
    return acc;
}

void check_representation(const FRepresentation& rep) {
    if (rep.f_minpoly.degree() < 1 || !rep.f_minpoly.is_monic())
        throw Error(ErrorKind::InvalidInput, "F needs a monic minimal polynomial");
    if (rep.f_action.rows() != rep.dim_v || rep.f_action.cols() != rep.dim_v)
        throw Error(ErrorKind::DimensionMismatch, "action matrix size differs from dim V");
    if (rep.dim_v == 0 || rep.dim_v % rep.degree() != 0)
        throw Error(ErrorKind::InvalidInput, "[F:Q] does not divide dim V");
    if (!poly_action(rep, rep.f_minpoly).is_zero()) throw Error(ErrorKind::InvalidInput, "f(A) != 0");
}

WeilSubspace weil_subspace(const FRepresentation& rep) {
    check_representation(rep);
    const FieldPtr F = NumberField::make(rep.f_minpoly);
    const FCoordinates fc = f_coordinates(rep);
    const Subsets tuples(rep.dim_v, rep.r());
    const auto dets = tuple_determinants(rep, fc, tuples, F);
    WeilSubspace ws;
    ws.r = rep.r();
    ws.wedge_dim = tuples.size();
    ws.f_basis = fc.f_basis;
    for (size_t i = 0; i < rep.degree(); ++i)
        ws.basis.push_back(forms_from_dets(dets, FieldElement::from_poly(F, Poly::monomial(1, i))));
    ws.rank = rank(QMatrix::from_rows(ws.basis, ws.wedge_dim));
    if (ws.rank != rep.degree())
        throw Error(ErrorKind::RankDefect, "W_F has rank " + std::to_string(ws.rank) + ", expected [F:Q]");
    return ws;
}

QVector weil_form(const FRepresentation& rep, const WeilSubspace&, const QVector& h) {
    const FieldPtr F = NumberField::make(rep.f_minpoly);
    const FCoordinates fc = f_coordinates(rep);
    const Subsets tuples(rep.dim_v, rep.r());
    return forms_from_dets(tuple_determinants(rep, fc, tuples, F), FieldElement(F, h));
}

QVector pullback(const QVector& form, const Subsets& tuples, const QMatrix& T) {
    return pullback_all({form}, tuples, T)[0];
}

bool fstar_scaling_check(const FRepresentation& rep, const WeilSubspace& ws, const QVector& f) {
    const FieldPtr F = NumberField::make(rep.f_minpoly);
    const FieldElement fe(F, f);
    if (fe.is_zero()) throw Error(ErrorKind::PreconditionViolation, "f must be non-zero");
    const FCoordinates fc = f_coordinates(rep);
    const Subsets tuples(rep.dim_v, ws.r);
    const auto dets = tuple_determinants(rep, fc, tuples, F);
    const auto lhs = pullback_all(ws.basis, tuples, poly_action(rep, fe.as_poly()));
    const FieldElement fr = fe.pow(ws.r);
    for (size_t i = 0; i < ws.basis.size(); ++i)
        if (lhs[i] != forms_from_dets(dets, fr * FieldElement::from_poly(F, Poly::monomial(1, i)))) return false;
    return true;
}

bool fstar_scaling_sampled(const FRepresentation& rep, const QVector& f, size_t samples, uint64_t seed) {
    check_representation(rep);
    const FieldPtr F = NumberField::make(rep.f_minpoly);
    const FieldElement fe(F, f);
    if (fe.is_zero()) throw Error(ErrorKind::PreconditionViolation, "f must be non-zero");
    const FCoordinates fc = f_coordinates(rep);
    // the action of f in F-coordinates; vectors are sampled there so that
    // entries stay small, and v = P c is never formed
    const QMatrix Q = fc.Pinv * (poly_action(rep, fe.as_poly()) * fc.P);
    const size_t d = rep.degree(), r = rep.r();
    const FieldElement fr = fe.pow(r);
    const auto det_of = [&](const QMatrix& c) {
        std::vector<std::vector<FieldElement>> m(r, std::vector<FieldElement>(r, FieldElement::zero(F)));
        for (size_t k = 0; k < r; ++k)
            for (size_t j = 0; j < r; ++j) {
                QVector x(d);
                for (size_t t = 0; t < d; ++t) x[t] = c(j * d + t, k);
                m[j][k] = FieldElement(F, std::move(x));
            }
        return det_f(std::move(m));
    };
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-3, 3);
    for (size_t s = 0; s < samples; ++s) {
        QMatrix c(rep.dim_v, r);
        for (size_t i = 0; i < rep.dim_v; ++i)
            for (size_t k = 0; k < r; ++k) c(i, k) = dist(rng);
        const FieldElement lhs = det_of(Q * c), rhs = fr * det_of(c);
        for (size_t i = 0; i < d; ++i) {
            const FieldElement h = FieldElement::from_poly(F, Poly::monomial(1, i));
            if (trace_abs(h * lhs) != trace_abs(h * rhs)) return false;
        }
    }
    return true;
}

namespace {

// Coefficients of the idempotent e_sigma = p(x) / ((x - lambda) p'(lambda)).
std::vector<QComplex> idempotent(const Poly& p, const QComplex& lambda, unsigned digits) {
    const size_t d = static_cast<size_t>(p.degree());
    std::vector<QComplex> u(d);
    u[d - 1] = QComplex(p.leading());
    for (size_t k = d - 1; k >= 1; --k) u[k - 1] = QComplex(p.coeff(k)) + lambda * u[k];
    const QComplex dp = eval(p.derivative(), lambda);
    for (auto& x : u) x = round_decimal(x / dp, digits);
    return u;
}

std::vector<QComplex> lambda_powers(const QComplex& lambda, size_t d, unsigned digits) {
    std::vector<QComplex> w(d);
    w[0] = QComplex(1);
    for (size_t i = 1; i < d; ++i) w[i] = round_decimal(w[i - 1] * lambda, digits);
    return w;
}

}  // namespace

ComplexStructureNum build_complex_structure(const FRepresentation& rep, const std::vector<long>& n, unsigned precision,
                                            const Rational& tolerance) {
    check_representation(rep);
    if (precision < 30) throw Error(ErrorKind::InvalidInput, "precision must be at least 30 digits");
    const size_t d = rep.degree(), r = rep.r(), N = rep.dim_v;
    const FieldPtr F = NumberField::make(rep.f_minpoly);
    const auto& conj = F->embeddings().conjugate;
    if (n.size() != d) throw Error(ErrorKind::InvalidInput, "need one multiplicity per embedding of F");
    for (size_t s = 0; s < d; ++s) {
        if (n[s] < 0 || n[s] + n[conj[s]] != static_cast<long>(r))
            throw Error(ErrorKind::InvalidInput, "multiplicities must satisfy n_sigma + n_sigma' = r");
        if (conj[s] == s && 2 * n[s] != static_cast<long>(r))
            throw Error(ErrorKind::InvalidInput, "real embeddings need n_sigma = r/2");
    }
    const unsigned work = precision + 10;
    ComplexStructureNum cs;
    cs.precision = precision;
    cs.tolerance = tolerance;
    cs.lambdas = root_approximations(rep.f_minpoly, work);

    // J' = sum_sigma M_sigma (x) L_sigma on coordinates (j, i).
    std::vector<QComplex> Jp(N * N);
    const QComplex I(0, 1);
    for (size_t s = 0; s < d; ++s) {
        std::vector<QComplex> M(r * r);
        if (conj[s] == s) {
            for (size_t t = 0; t + 1 < r; t += 2) {
                M[t * r + t + 1] = QComplex(-1);
                M[(t + 1) * r + t] = QComplex(1);
            }
        } else {
            // +i on the first n_rep coordinates of the representative of the pair
            const size_t rep_s = std::min(s, conj[s]);
            const size_t plus = static_cast<size_t>(n[rep_s]);
            for (size_t t = 0; t < r; ++t) {
                QComplex v = t < plus ? I : -I;
                M[t * r + t] = s == rep_s ? v : v.conj();
            }
        }
        const auto e = idempotent(rep.f_minpoly, cs.lambdas[s], work);
        const auto w = lambda_powers(cs.lambdas[s], d, work);
        for (size_t j = 0; j < r; ++j)
            for (size_t jj = 0; jj < r; ++jj) {
                if (M[j * r + jj].is_zero()) continue;
                for (size_t i = 0; i < d; ++i)
                    for (size_t ii = 0; ii < d; ++ii) Jp[(j * d + i) * N + jj * d + ii] += M[j * r + jj] * e[i] * w[ii];
            }
    }
    const FCoordinates fc = f_coordinates(rep);
    // J = P J' P^-1, real part rounded.
    std::vector<QComplex> tmp(N * N);
    for (size_t a = 0; a < N; ++a)
        for (size_t k = 0; k < N; ++k) {
            if (fc.P(a, k) == 0) continue;
            for (size_t b = 0; b < N; ++b) tmp[a * N + b] += fc.P(a, k) * Jp[k * N + b];
        }
    cs.j = QMatrix(N, N);
    cs.residual_imag = 0;
    for (size_t a = 0; a < N; ++a)
        for (size_t b = 0; b < N; ++b) {
            QComplex acc;
            for (size_t k = 0; k < N; ++k)
                if (fc.Pinv(k, b) != 0) acc += fc.Pinv(k, b) * tmp[a * N + k];
            cs.j(a, b) = round_decimal(acc.re, precision);
            cs.residual_imag = std::max(cs.residual_imag, abs(acc.im));
        }
    cs.residual_square = max_abs(cs.j * cs.j + QMatrix::identity(N));
    cs.residual_commute = max_abs(cs.j * rep.f_action - rep.f_action * cs.j);
    if (cs.residual_square > tolerance || cs.residual_commute > tolerance || cs.residual_imag > tolerance)
        throw Error(ErrorKind::IllConditioned, "complex structure residual above tolerance; increase precision");
    return cs;
}

HodgeTypeResult hodge_type_oracle(const FRepresentation& rep, const WeilSubspace& ws, const ComplexStructureNum& cs,
                                  const Rational& tolerance) {
    const size_t d = rep.degree(), r = ws.r, N = rep.dim_v;
    const Subsets tuples(N, r);
    if (ws.basis.size() != d || cs.lambdas.size() != d || cs.j.rows() != N)
        throw Error(ErrorKind::DimensionMismatch, "inconsistent oracle inputs");
    const FieldPtr F = NumberField::make(rep.f_minpoly);
    const auto& conj = F->embeddings().conjugate;
    (void)conj;
    HodgeTypeResult out;
    out.is_all_hodge = true;
    const QComplex I(0, 1);
    for (size_t s = 0; s < d; ++s) {
        const auto e = idempotent(rep.f_minpoly, cs.lambdas[s], cs.precision + 10);
        std::vector<QComplex> omega(tuples.size());
        for (size_t i = 0; i < d; ++i)
            for (size_t t = 0; t < tuples.size(); ++t)
                if (ws.basis[i][t] != 0) omega[t] += ws.basis[i][t] * e[i];
        // D omega = sum over argument slots of omega(.., J e, ..)
        std::vector<QComplex> Domega(tuples.size());
        for (size_t t = 0; t < tuples.size(); ++t) {
            const auto& tup = tuples[t];
            for (size_t k = 0; k < r; ++k)
                for (size_t sidx = 0; sidx < N; ++sidx) {
                    const Rational& jv = cs.j(sidx, tup[k]);
                    if (jv == 0) continue;
                    bool clash = false;
                    size_t less = 0;
                    std::vector<size_t> nt;
                    for (size_t m = 0; m < r; ++m) {
                        if (m == k) continue;
                        if (tup[m] == sidx) clash = true;
                        if (tup[m] < sidx) ++less;
                        nt.push_back(tup[m]);
                    }
                    if (clash) continue;
                    nt.insert(nt.begin() + long(less), sidx);
                    const long sign = ((k > less ? k - less : less - k) % 2) ? -1 : 1;
                    Domega[t] += Rational(jv * sign) * omega[tuples.index(nt)];
                }
        }
        Rational norm(0);
        QComplex inner;
        for (size_t t = 0; t < tuples.size(); ++t) {
            norm += omega[t].norm2();
            inner += omega[t].conj() * Domega[t];
        }
        if (norm == 0) throw Error(ErrorKind::ToleranceExceeded, "vanishing sigma-component");
        const Rational kq = inner.im / norm;
        const long k = floor(kq + Rational(1, 2)).get_si();
        Rational res(0);
        for (size_t t = 0; t < tuples.size(); ++t) res += (Domega[t] - Rational(k) * (I * omega[t])).norm2();
        res /= norm;
        SigmaBidegree b;
        b.sigma = s;
        b.k_numeric = kq.get_d();
        b.residual = std::sqrt(res.get_d());
        if (res > tolerance * tolerance || std::labs(k) > static_cast<long>(r) || (static_cast<long>(r) + k) % 2 != 0)
            throw Error(ErrorKind::ToleranceExceeded,
                        "sigma-component " + std::to_string(s) + " is not an eigenform (residual " +
                            std::to_string(b.residual) + ")");
        b.p = (static_cast<long>(r) + k) / 2;
        b.q = (static_cast<long>(r) - k) / 2;
        if (b.p != b.q) out.is_all_hodge = false;
        out.max_residual = std::max(out.max_residual, b.residual);
        out.components.push_back(b);
    }
    return out;
}

std::vector<QVector> divisor_forms(const FRepresentation& rep, const QMatrix& phi, const std::vector<QMatrix>& symmetric) {
    const size_t N = rep.dim_v;
    if (phi.rows() != N || phi.cols() != N) throw Error(ErrorKind::DimensionMismatch, "polarization size");
    if (phi.transpose() != Rational(-1) * phi) throw Error(ErrorKind::NotAlternating, "polarization is not alternating");
    if (determinant(phi) == 0) throw Error(ErrorKind::NotAlternating, "polarization is degenerate");
    const Subsets pairs(N, 2);
    std::vector<QVector> out;
    for (size_t k = 0; k < symmetric.size(); ++k) {
        const QMatrix& S = symmetric[k];
        const QMatrix form = S.transpose() * phi;
        if (phi * S != form)
            throw Error(ErrorKind::NotAlternating, "element " + std::to_string(k) + " is not symmetric for phi");
        QVector v(pairs.size());
        for (size_t t = 0; t < pairs.size(); ++t) v[t] = form(pairs[t][0], pairs[t][1]);
        out.push_back(std::move(v));
    }
    return out;
}

QVector wedge(const QVector& a, size_t p, const QVector& b, size_t q, size_t n) {
    const Subsets sp(n, p), sq(n, q), sr(n, p + q);
    const Subsets pick(p + q, p);
    QVector out(sr.size());
    for (size_t t = 0; t < sr.size(); ++t) {
        const auto& tup = sr[t];
        for (size_t c = 0; c < pick.size(); ++c) {
            const auto& pos = pick[c];
            std::vector<size_t> A, B;
            size_t inv = 0;
            size_t pi = 0;
            for (size_t m = 0; m < p + q; ++m) {
                if (pi < p && pos[pi] == m) {
                    A.push_back(tup[m]);
                    inv += m - pi;  // B-elements preceding this A-element
                    ++pi;
                } else {
                    B.push_back(tup[m]);
                }
            }
            const Rational& av = a[sp.index(A)];
            if (av == 0) continue;
            const Rational& bv = b[sq.index(B)];
            if (bv == 0) continue;
            if (inv % 2)
                out[t] -= av * bv;
            else
                out[t] += av * bv;
        }
    }
    return out;
}

WitnessResult decomposability_witness(const WeilSubspace& ws, size_t dim_v, const std::vector<QVector>& forms, size_t cap) {
    if (ws.r % 2 != 0) throw Error(ErrorKind::PreconditionViolation, "r must be even");
    if (binomial(dim_v, ws.r) > cap)
        throw Error(ErrorKind::CombinatorialBlowup, "C(" + std::to_string(dim_v) + "," + std::to_string(ws.r) +
                                                        ") exceeds the cap of " + std::to_string(cap));
    const size_t half = ws.r / 2;
    WitnessResult res;
    res.caveat = "span of products of the supplied divisor forms only; extra divisor classes of a special X are not modelled";
    std::vector<size_t> cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (cur.size() == half) {
            res.monomials.push_back(cur);
            return;
        }
        for (size_t i = start; i < forms.size(); ++i) {
            cur.push_back(i);
            rec(i);
            cur.pop_back();
        }
    };
    if (half > 0) rec(0);
    std::vector<QVector> products;
    for (const auto& mono : res.monomials) {
        QVector acc = forms[mono[0]];
        size_t deg = 2;
        for (size_t k = 1; k < mono.size(); ++k) {
            acc = wedge(acc, deg, forms[mono[k]], 2, dim_v);
            deg += 2;
        }
        products.push_back(std::move(acc));
    }
    const size_t m = binomial(dim_v, ws.r);
    res.products_rank = products.empty() ? 0 : rank(QMatrix::from_columns(products, m));
    std::vector<QVector> augmented = products;
    for (const auto& w : ws.basis) augmented.push_back(w);
    res.augmented_rank = rank(QMatrix::from_columns(augmented, m));
    res.found = res.augmented_rank == res.products_rank;
    if (res.found) {
        for (const auto& w : ws.basis) {
            auto c = solve(QMatrix::from_columns(products, m), w);
            if (!c) throw Error(ErrorKind::InconsistencyDetected, "rank test and solve disagree");
            res.coefficients.push_back(std::move(*c));
        }
    }
    return res;
}

WitnessModel witness_model(const AbelianVarietyDatum& datum) {
    auto unsupported = [](const std::string& why) {
        throw Error(ErrorKind::PreconditionViolation, "witness model unsupported: " + why);
    };
    if (datum.factors.size() != 1) unsupported("needs a single factor");
    const auto& fac = datum.factors[0];
    if (fac.power != 1 || fac.d != 1) unsupported("needs m = d = 1");
    if (fac.albert_type != AlbertType::I && fac.albert_type != AlbertType::IV) unsupported("needs type I or IV");
    if (fac.compositum.size() != 1) unsupported("needs F inside E (one compositum component)");
    const auto& comp = fac.compositum[0];
    const FieldPtr& K = comp.field;
    const size_t n = K->degree();
    if (n != fac.center->degree()) unsupported("needs F inside E (K = E)");
    const size_t k = static_cast<size_t>(comp.module_rank);

    WitnessModel wm;
    wm.rep = {n * k, block_diag(comp.embed_f.gen_image().mult_matrix(), k), datum.field_f->min_poly()};
    check_representation(wm.rep);
    QMatrix phi(n * k, n * k);
    auto in_k = [&](const FieldElement& e) { return comp.embed_e.image(FieldElement(comp.embed_e.field(), e.coords())); };
    std::vector<FieldElement> xs;
    for (size_t a = 0; a < n; ++a) xs.push_back(FieldElement::from_poly(K, Poly::monomial(1, a)));

    if (fac.albert_type == AlbertType::I) {
        if (k % 2 != 0) unsupported("type I needs an even module rank");
        // sum_j Tr(v_{2j} w_{2j+1} - v_{2j+1} w_{2j})
        for (size_t j = 0; j + 1 < k; j += 2)
            for (size_t a = 0; a < n; ++a)
                for (size_t b = 0; b < n; ++b) {
                    const Rational t = trace_abs(xs[a] * xs[b]);
                    phi(j * n + a, (j + 1) * n + b) = t;
                    phi((j + 1) * n + a, j * n + b) = -t;
                }
        for (size_t a = 0; a < n; ++a) wm.symmetric.push_back(block_diag(xs[a].mult_matrix(), k));
    } else {
        if (!fac.cm) unsupported("type IV needs a CM structure");
        const CMVerification cm = verify_cm(*fac.cm);
        // conjugation transported to K through embed_e
        std::vector<QVector> img_cols;
        for (size_t a = 0; a < n; ++a) img_cols.push_back(in_k(FieldElement::from_poly(fac.center, Poly::monomial(1, a))).coords());
        const QMatrix E = QMatrix::from_columns(img_cols, n);
        const QMatrix cK = E * cm.conjugation * inverse(E);
        const FieldElement eta = in_k(fac.cm->eta);
        // sum_j Tr(eta v_j c(w_j))
        for (size_t j = 0; j < k; ++j)
            for (size_t a = 0; a < n; ++a)
                for (size_t b = 0; b < n; ++b) {
                    const FieldElement cb(K, cK * xs[b].coords());
                    phi(j * n + a, j * n + b) = trace_abs(eta * xs[a] * cb);
                }
        FieldElement p = FieldElement::one(K);
        const FieldElement rg = in_k(fac.cm->real_gen);
        for (size_t i = 0; i < n / 2; ++i) {
            wm.symmetric.push_back(block_diag(p.mult_matrix(), k));
            p = p * rg;
        }
    }
    wm.polarization = std::move(phi);
    return wm;
}

}  // namespace weil

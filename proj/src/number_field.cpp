#include "weil/number_field.hpp"

#include "weil/error.hpp"

#include <sstream>

namespace weil {

NumberField::NumberField(Poly f) : f_(std::move(f)) {
    if (f_.degree() < 1) throw Error(ErrorKind::InvalidInput, "minimal polynomial must have degree >= 1");
    if (!f_.is_monic()) throw Error(ErrorKind::InvalidInput, "minimal polynomial " + f_.to_string() + " is not monic");
    if (!is_squarefree(f_)) throw Error(ErrorKind::NotSquarefree, f_.to_string() + " has a repeated factor");
}

FieldPtr NumberField::make(Poly min_poly) { return std::make_shared<const NumberField>(std::move(min_poly)); }

const RootIsolation& NumberField::embeddings() const {
    std::call_once(roots_once_, [this] { roots_ = isolate_roots(f_, pow2(-32)); });
    return *roots_;
}

size_t NumberField::real_embedding_count() const { return sturm_count(f_); }

QVector NumberField::reduce(const Poly& p) const {
    Poly r = p.degree() >= f_.degree() ? p % f_ : p;
    QVector c(degree());
    for (size_t k = 0; k < r.coeffs().size(); ++k) c[k] = r.coeffs()[k];
    return c;
}

QVector NumberField::multiply(const QVector& a, const QVector& b) const {
    const size_t n = degree();
    // schoolbook product, then fold x^k for k >= n using x^n = -sum f_i x^i
    QVector prod(2 * n - 1);
    for (size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < n; ++j)
            if (b[j] != 0) prod[i + j] += a[i] * b[j];
    }
    for (size_t k = prod.size(); k-- > n;) {
        const Rational top = prod[k];
        if (top == 0) continue;
        for (size_t i = 0; i < n; ++i) prod[k - n + i] -= top * f_.coeff(i);
        prod[k] = 0;
    }
    prod.resize(n);
    return prod;
}

QMatrix NumberField::mult_matrix(const QVector& a) const {
    const size_t n = degree();
    QMatrix m(n, n);
    QVector col = a;
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < n; ++i) m(i, j) = col[i];
        // col <- x * col
        QVector next(n);
        for (size_t i = 0; i + 1 < n; ++i) next[i + 1] = col[i];
        const Rational top = col[n - 1];
        if (top != 0)
            for (size_t i = 0; i < n; ++i) next[i] -= top * f_.coeff(i);
        col = std::move(next);
    }
    return m;
}

// --- elements ---------------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, QVector coords) : field_(std::move(field)), c_(std::move(coords)) {
    if (!field_) throw Error(ErrorKind::InvalidInput, "field element without a field");
    if (c_.size() != field_->degree()) throw Error(ErrorKind::DimensionMismatch, "coordinate count differs from field degree");
}

FieldElement FieldElement::zero(const FieldPtr& field) { return {field, QVector(field->degree())}; }

FieldElement FieldElement::one(const FieldPtr& field) { return rational(field, 1); }

FieldElement FieldElement::rational(const FieldPtr& field, const Rational& q) {
    QVector c(field->degree());
    c[0] = q;
    return {field, std::move(c)};
}

FieldElement FieldElement::gen(const FieldPtr& field) { return from_poly(field, Poly::x()); }

FieldElement FieldElement::from_poly(const FieldPtr& field, const Poly& p) { return {field, field->reduce(p)}; }

namespace {

void require_same(const FieldElement& a, const FieldElement& b) {
    if (!a.field()->same_as(*b.field())) throw Error(ErrorKind::FieldMismatch, "elements of different fields");
}

}  // namespace

FieldElement FieldElement::operator-() const {
    QVector c = c_;
    for (auto& x : c) x = -x;
    return {field_, std::move(c)};
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    QVector c = a.c_;
    for (size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
    return {a.field_, std::move(c)};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    return {a.field_, a.field_->multiply(a.c_, b.c_)};
}

FieldElement operator*(const Rational& s, const FieldElement& a) {
    QVector c = a.c_;
    for (auto& x : c) x *= s;
    return {a.field_, std::move(c)};
}

bool operator==(const FieldElement& a, const FieldElement& b) { return a.field_->same_as(*b.field_) && a.c_ == b.c_; }

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    ExtendedGcd e = extended_gcd(as_poly(), field_->min_poly());
    if (e.g.degree() != 0) throw Error(ErrorKind::DivisionByZero, "element is a zero divisor (reducible modulus)");
    return from_poly(field_, Rational(1 / e.g.leading()) * e.s);
}

FieldElement FieldElement::pow(unsigned long e) const {
    FieldElement result = one(field_), base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::string FieldElement::to_string() const { return as_poly().to_string(); }

FieldElement element_add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement element_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement element_inv(const FieldElement& a) { return a.inverse(); }

Rational trace_abs(const FieldElement& a) { return charpoly_trace(a.mult_matrix()); }

Poly minimal_polynomial(const FieldElement& a) {
    const size_t n = a.field()->degree();
    std::vector<QVector> powers{FieldElement::one(a.field()).coords()};
    FieldElement p = FieldElement::one(a.field());
    for (size_t k = 1; k <= n; ++k) {
        p = p * a;
        auto rel = span_membership(powers, p.coords());
        if (rel) {
            std::vector<Rational> c(k + 1);
            for (size_t i = 0; i < k; ++i) c[i] = -(*rel)[i];
            c[k] = 1;
            return Poly(std::move(c));
        }
        powers.push_back(p.coords());
    }
    throw Error(ErrorKind::InconsistencyDetected, "no linear relation among powers");
}

// --- embedded subfields ------------------------------------------------------

EmbeddedSubfield::EmbeddedSubfield(FieldElement gen_image, Poly sub_min_poly)
    : gen_(std::move(gen_image)), sub_(NumberField::make(std::move(sub_min_poly))) {
    const size_t d = sub_->degree();
    const size_t n = over()->degree();
    if (n % d != 0) throw Error(ErrorKind::InvalidInput, "subfield degree does not divide the ambient degree");
    FieldElement p = FieldElement::one(over());
    for (size_t k = 0; k < d; ++k) {
        powers_.push_back(p.coords());
        p = p * gen_;
    }
    // p = gen^d now; sub_min_poly(gen) = gen^d + sum c_k gen^k
    QVector value = p.coords();
    for (size_t k = 0; k < d; ++k)
        for (size_t i = 0; i < n; ++i) value[i] += sub_->min_poly().coeff(k) * powers_[k][i];
    if (!weil::is_zero(value))
        throw Error(ErrorKind::InvalidInput, "generator image is not a root of " + sub_->min_poly().to_string());
    if (rank(QMatrix::from_columns(powers_, n)) != d)
        throw Error(ErrorKind::InvalidInput, "powers of the generator image are dependent");
}

EmbeddedSubfield EmbeddedSubfield::rationals(const FieldPtr& over) { return {FieldElement::zero(over), Poly::x()}; }

EmbeddedSubfield EmbeddedSubfield::whole(const FieldPtr& over) { return {FieldElement::gen(over), over->min_poly()}; }

FieldElement EmbeddedSubfield::image(const FieldElement& a) const {
    if (!a.field()->same_as(*sub_)) throw Error(ErrorKind::FieldMismatch, "element is not in the subfield");
    QVector v(over()->degree());
    for (size_t k = 0; k < powers_.size(); ++k)
        if (a.coords()[k] != 0)
            for (size_t i = 0; i < v.size(); ++i) v[i] += a.coords()[k] * powers_[k][i];
    return {over(), std::move(v)};
}

std::optional<FieldElement> EmbeddedSubfield::preimage(const FieldElement& k) const {
    if (!k.field()->same_as(*over())) throw Error(ErrorKind::FieldMismatch, "element is not in the ambient field");
    auto c = span_membership(powers_, k.coords());
    if (!c) return std::nullopt;
    return FieldElement(sub_, std::move(*c));
}

namespace {

std::vector<size_t> index_order(size_t n, const std::vector<size_t>& order) {
    if (order.empty()) {
        std::vector<size_t> o(n);
        for (size_t i = 0; i < n; ++i) o[i] = i;
        return o;
    }
    if (order.size() != n) throw Error(ErrorKind::DimensionMismatch, "candidate order length");
    return order;
}

// Columns f_i * b_j, ordered j-major.
std::vector<QVector> scaled_basis(const EmbeddedSubfield& F, const std::vector<FieldElement>& b) {
    std::vector<QVector> cols;
    for (const auto& bj : b)
        for (const auto& fi : F.power_images()) cols.push_back(F.over()->multiply(fi, bj.coords()));
    return cols;
}

}  // namespace

std::vector<FieldElement> f_basis(const EmbeddedSubfield& F, const std::vector<size_t>& order) {
    const FieldPtr& K = F.over();
    const size_t n = K->degree(), d = F.degree();
    std::vector<FieldElement> basis;
    std::vector<QVector> cols;
    for (size_t idx : index_order(n, order)) {
        if (cols.size() == n) break;
        FieldElement cand = FieldElement::from_poly(K, Poly::monomial(1, idx));
        std::vector<QVector> trial = cols;
        for (const auto& fi : F.power_images()) trial.push_back(K->multiply(fi, cand.coords()));
        if (rank(QMatrix::from_columns(trial, n)) == trial.size()) {
            cols = std::move(trial);
            basis.push_back(std::move(cand));
        }
    }
    if (cols.size() != n || basis.size() * d != n)
        throw Error(ErrorKind::BasisNotFound, "power basis does not contain an F-basis");
    return basis;
}

FieldElement relative_trace(const EmbeddedSubfield& F, const FieldElement& a, const std::vector<size_t>& order) {
    if (!a.field()->same_as(*F.over())) throw Error(ErrorKind::FieldMismatch, "element is not in the ambient field");
    const size_t d = F.degree();
    std::vector<FieldElement> b = f_basis(F, order);
    QMatrix to_coords = inverse(QMatrix::from_columns(scaled_basis(F, b), F.over()->degree()));
    QVector tr(d);
    for (size_t j = 0; j < b.size(); ++j) {
        QVector c = to_coords * (a * b[j]).coords();
        for (size_t i = 0; i < d; ++i) tr[i] += c[j * d + i];
    }
    return {F.field(), std::move(tr)};
}

bool is_totally_real(const NumberField& K) { return K.is_totally_real(); }

bool subfield_contains(const EmbeddedSubfield& A, const EmbeddedSubfield& B) {
    if (!A.over()->same_as(*B.over())) throw Error(ErrorKind::FieldMismatch, "subfields of different fields");
    return span_membership(A.power_images(), B.gen_image().coords()).has_value();
}

std::vector<size_t> restrict_embeddings(const EmbeddedSubfield& F) {
    const Poly h = F.gen_image().as_poly();
    const size_t n = F.over()->degree();
    if (F.degree() == 1) return std::vector<size_t>(n, 0);
    for (long bits = 16; bits <= 4096; bits *= 2) {
        RootIsolation k_roots = F.over()->embeddings(pow2(-bits));
        RootIsolation f_roots = F.field()->embeddings(pow2(-bits));
        std::vector<size_t> out(n);
        bool ok = true;
        for (size_t k = 0; k < n && ok; ++k) {
            ComplexInterval img = eval(h, k_roots.boxes[k].as_interval());
            size_t hits = 0;
            for (size_t s = 0; s < f_roots.boxes.size(); ++s)
                if (img.intersects(f_roots.boxes[s].as_interval())) {
                    out[k] = s;
                    ++hits;
                }
            ok = hits == 1;
        }
        if (ok) return out;
    }
    throw Error(ErrorKind::IllConditioned, "could not separate embedding images");
}

EmbeddedSubfield subfield_from_basis(const FieldPtr& K, const std::vector<QVector>& basis) {
    const size_t dim = basis.size();
    if (dim == 0) throw Error(ErrorKind::ClosureFailure, "empty subspace");
    if (dim == 1) return EmbeddedSubfield::rationals(K);
    // Candidates: the basis vectors, then integer combinations.
    std::vector<QVector> cands = basis;
    for (long t = 1; t <= 8; ++t) {
        QVector v(K->degree());
        long c = 1;
        for (const auto& b : basis) {
            for (size_t i = 0; i < v.size(); ++i) v[i] += c * b[i];
            c *= t + 1;
        }
        cands.push_back(std::move(v));
    }
    for (const auto& c : cands) {
        FieldElement z(K, c);
        Poly mp = minimal_polynomial(z);
        if (mp.degree() != static_cast<int>(dim)) continue;
        EmbeddedSubfield sub(z, mp);
        // The powers of z must span exactly the given subspace.
        for (const auto& b : basis)
            if (!span_membership(sub.power_images(), b))
                throw Error(ErrorKind::ClosureFailure, "subspace is not a subfield");
        return sub;
    }
    throw Error(ErrorKind::ClosureFailure, "no primitive element found for subspace");
}

}  // namespace weil

#pragma once

#include "weil/poly.hpp"
#include "weil/qmatrix.hpp"
#include "weil/roots.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace weil {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Q[x]/(f) for a monic squarefree f (irreducibility is the caller's claim).
class NumberField {
public:
    /// Throws InvalidInput (degree < 1 or not monic) or NotSquarefree.
    static FieldPtr make(Poly min_poly);

    const Poly& min_poly() const { return f_; }
    size_t degree() const { return static_cast<size_t>(f_.degree()); }

    /// Root boxes of the minimal polynomial at width 2^-32, computed once.
    const RootIsolation& embeddings() const;
    RootIsolation embeddings(const Rational& width) const { return isolate_roots(f_, width); }

    size_t real_embedding_count() const;
    bool is_totally_real() const { return real_embedding_count() == degree(); }

    /// Power-basis coordinates of p mod f.
    QVector reduce(const Poly& p) const;
    QVector multiply(const QVector& a, const QVector& b) const;
    /// Matrix of multiplication by a on the power basis.
    QMatrix mult_matrix(const QVector& a) const;

    bool same_as(const NumberField& other) const { return this == &other || f_ == other.f_; }

    explicit NumberField(Poly f);

private:
    Poly f_;
    mutable std::once_flag roots_once_;
    mutable std::optional<RootIsolation> roots_;
};

class FieldElement {
public:
    FieldElement(FieldPtr field, QVector coords);

    static FieldElement zero(const FieldPtr& field);
    static FieldElement one(const FieldPtr& field);
    static FieldElement rational(const FieldPtr& field, const Rational& q);
    /// The class of x.
    static FieldElement gen(const FieldPtr& field);
    static FieldElement from_poly(const FieldPtr& field, const Poly& p);

    const FieldPtr& field() const { return field_; }
    const QVector& coords() const { return c_; }
    Poly as_poly() const { return Poly(c_); }
    bool is_zero() const { return weil::is_zero(c_); }

    FieldElement operator-() const;
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const Rational& s, const FieldElement& a);
    friend bool operator==(const FieldElement& a, const FieldElement& b);

    /// Throws DivisionByZero for 0.
    FieldElement inverse() const;
    FieldElement pow(unsigned long e) const;
    QMatrix mult_matrix() const { return field_->mult_matrix(c_); }
    std::string to_string() const;

private:
    FieldPtr field_;
    QVector c_;
};

FieldElement element_add(const FieldElement& a, const FieldElement& b);
FieldElement element_mul(const FieldElement& a, const FieldElement& b);
FieldElement element_inv(const FieldElement& a);

/// Tr_{K/Q}(a) as the trace of multiplication by a.
Rational trace_abs(const FieldElement& a);

/// Monic minimal polynomial over Q, from the first linear relation among powers.
Poly minimal_polynomial(const FieldElement& a);

/// A subfield of K given by the image of a generator and its minimal
/// polynomial. Q itself is the generator 0 with polynomial x.
class EmbeddedSubfield {
public:
    /// Checks sub_min_poly(gen_image) = 0, deg | [K:Q] and independence of
    /// the first deg powers. Throws InvalidInput.
    EmbeddedSubfield(FieldElement gen_image, Poly sub_min_poly);

    static EmbeddedSubfield rationals(const FieldPtr& over);
    static EmbeddedSubfield whole(const FieldPtr& over);

    const FieldPtr& over() const { return gen_.field(); }
    const FieldElement& gen_image() const { return gen_; }
    const Poly& sub_min_poly() const { return sub_->min_poly(); }
    /// Q[x]/(sub_min_poly) as a field in its own right.
    const FieldPtr& field() const { return sub_; }
    size_t degree() const { return sub_->degree(); }

    /// gen_image^0 .. gen_image^{d-1} as coordinate vectors in K.
    const std::vector<QVector>& power_images() const { return powers_; }

    /// Image in K of an element of field().
    FieldElement image(const FieldElement& a) const;
    /// The element of field() mapping to k, if k lies in the subfield.
    std::optional<FieldElement> preimage(const FieldElement& k) const;

private:
    FieldElement gen_;
    FieldPtr sub_;
    std::vector<QVector> powers_;
};

/// F-basis of K chosen greedily from the power basis, visiting indices in
/// `order` (default 0, 1, ...). Throws BasisNotFound.
std::vector<FieldElement> f_basis(const EmbeddedSubfield& F, const std::vector<size_t>& order = {});

/// Tr_{K/F}(a) as an element of F.field().
FieldElement relative_trace(const EmbeddedSubfield& F, const FieldElement& a, const std::vector<size_t>& order = {});

bool is_totally_real(const NumberField& K);

/// B contained in A (both embedded in the same K).
bool subfield_contains(const EmbeddedSubfield& A, const EmbeddedSubfield& B);

/// For each embedding of K (canonical order), the index of the embedding of
/// F it restricts to. Certified by interval evaluation on root boxes.
std::vector<size_t> restrict_embeddings(const EmbeddedSubfield& F);

/// A primitive element of the field spanned by `basis` inside K, as an
/// embedded subfield. Throws ClosureFailure if the span is not a field.
EmbeddedSubfield subfield_from_basis(const FieldPtr& K, const std::vector<QVector>& basis);

}  // namespace weil

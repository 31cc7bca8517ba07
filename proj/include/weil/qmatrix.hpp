#pragma once

#include "weil/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace weil {

/// Dense row-major matrix over Q.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    QMatrix(size_t rows, size_t cols, std::vector<Rational> entries);

    static QMatrix identity(size_t n);
    static QMatrix from_columns(const std::vector<QVector>& columns, size_t rows);
    static QMatrix from_rows(const std::vector<QVector>& rows, size_t cols);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const std::vector<Rational>& entries() const { return a_; }

    Rational& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    QVector column(size_t j) const;
    QVector row(size_t i) const;
    QMatrix transpose() const;
    bool is_zero() const;

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator*(const Rational& s, const QMatrix& a);
    friend QVector operator*(const QMatrix& a, const QVector& v);
    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    std::string to_string() const;

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Rational> a_;
};

/// Reduced row echelon form, computed from a fraction-free (Bareiss)
/// integer echelon form followed by exact back-substitution.
struct RowEchelon {
    QMatrix reduced;              // rank rows of the RREF
    std::vector<size_t> pivots;   // pivot column of each row
};
RowEchelon row_echelon(const QMatrix& m);

size_t rank(const QMatrix& m);

/// Basis of the right kernel; empty iff m is injective.
std::vector<QVector> kernel_basis(const QMatrix& m);

/// Coordinates of v in the span of basis (assumed linearly independent),
/// or nullopt if v lies outside. Throws DimensionMismatch.
std::optional<QVector> span_membership(const std::vector<QVector>& basis, const QVector& v);

/// Some solution of m x = b, or nullopt. Throws DimensionMismatch.
std::optional<QVector> solve(const QMatrix& m, const QVector& b);

/// Throws DivisionByZero if singular, DimensionMismatch if not square.
QMatrix inverse(const QMatrix& m);

/// Exact determinant by fraction-free elimination.
Rational determinant(const QMatrix& m);

/// Sum of the diagonal; throws DimensionMismatch for non-square input.
Rational charpoly_trace(const QMatrix& m);

/// Basis of the intersection of the spans of two families of vectors.
std::vector<QVector> subspace_intersection(const std::vector<QVector>& a, const std::vector<QVector>& b);

}  // namespace weil

#include "weil/qmatrix.hpp"

#include "weil/error.hpp"

#include <sstream>

namespace weil {

QMatrix::QMatrix(size_t rows, size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_) {
        throw Error(ErrorKind::DimensionMismatch, "entry count does not match rows*cols");
    }
}

QMatrix QMatrix::identity(size_t n) {
    QMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& columns, size_t rows) {
    QMatrix m(rows, columns.size());
    for (size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) throw Error(ErrorKind::DimensionMismatch, "column length");
        for (size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, size_t cols) {
    QMatrix m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "row length");
        for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

QVector QMatrix::column(size_t j) const {
    QVector v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

QVector QMatrix::row(size_t i) const {
    return QVector(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_));
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool QMatrix::is_zero() const { return weil::is_zero(a_); }

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product");
    QMatrix c(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k) {
            const Rational& x = a(i, k);
            if (x == 0) continue;
            for (size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
        }
    return c;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum");
    QMatrix c(a);
    for (size_t k = 0; k < c.a_.size(); ++k) c.a_[k] += b.a_[k];
    return c;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference");
    QMatrix c(a);
    for (size_t k = 0; k < c.a_.size(); ++k) c.a_[k] -= b.a_[k];
    return c;
}

QMatrix operator*(const Rational& s, const QMatrix& a) {
    QMatrix c(a);
    for (auto& x : c.a_) x *= s;
    return c;
}

QVector operator*(const QMatrix& a, const QVector& v) {
    if (a.cols_ != v.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
    QVector w(a.rows_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t j = 0; j < a.cols_; ++j)
            if (v[j] != 0) w[i] += a(i, j) * v[j];
    return w;
}

std::string QMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << weil::to_string((*this)(i, j));
    }
    os << "]";
    return os.str();
}

namespace {

using IntRows = std::vector<std::vector<Integer>>;

// Each row scaled by the lcm of its denominators; row scaling preserves
// rank, kernel and row space.
IntRows integer_rows(const QMatrix& m, std::vector<Integer>* scales = nullptr) {
    IntRows rows(m.rows(), std::vector<Integer>(m.cols()));
    if (scales) scales->assign(m.rows(), Integer(1));
    for (size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (size_t j = 0; j < m.cols(); ++j) {
            Rational scaled = m(i, j) * l;
            rows[i][j] = scaled.get_num();
        }
        if (scales) (*scales)[i] = l;
    }
    return rows;
}

struct BareissResult {
    IntRows rows;
    std::vector<size_t> pivots;
    int swap_sign = 1;
};

// Fraction-free elimination to row echelon form. Every intermediate entry
// is a minor of the input, so each division below is exact.
BareissResult bareiss(IntRows a, size_t cols) {
    BareissResult res;
    const size_t n = a.size();
    Integer prev = 1;
    size_t r = 0;
    for (size_t col = 0; col < cols && r < n; ++col) {
        size_t p = r;
        while (p < n && a[p][col] == 0) ++p;
        if (p == n) continue;
        if (p != r) {
            std::swap(a[p], a[r]);
            res.swap_sign = -res.swap_sign;
        }
        for (size_t i = r + 1; i < n; ++i) {
            for (size_t j = col + 1; j < cols; ++j) {
                Integer v = a[r][col] * a[i][j] - a[i][col] * a[r][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = std::move(v);
            }
            a[i][col] = 0;
        }
        prev = a[r][col];
        res.pivots.push_back(col);
        ++r;
    }
    a.resize(r);
    res.rows = std::move(a);
    return res;
}

}  // namespace

RowEchelon row_echelon(const QMatrix& m) {
    BareissResult b = bareiss(integer_rows(m), m.cols());
    const size_t rk = b.pivots.size();
    QMatrix red(rk, m.cols());
    for (size_t i = 0; i < rk; ++i) {
        const Integer& piv = b.rows[i][b.pivots[i]];
        for (size_t j = 0; j < m.cols(); ++j) {
            Rational v(b.rows[i][j], piv);
            v.canonicalize();
            red(i, j) = v;
        }
    }
    for (size_t k = rk; k-- > 0;) {
        const size_t pc = b.pivots[k];
        for (size_t i = 0; i < k; ++i) {
            Rational f = red(i, pc);
            if (f == 0) continue;
            for (size_t j = pc; j < m.cols(); ++j) red(i, j) -= f * red(k, j);
        }
    }
    return {std::move(red), std::move(b.pivots)};
}

size_t rank(const QMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return bareiss(integer_rows(m), m.cols()).pivots.size();
}

std::vector<QVector> kernel_basis(const QMatrix& m) {
    const size_t n = m.cols();
    RowEchelon e = row_echelon(m);
    std::vector<bool> is_pivot(n, false);
    for (size_t p : e.pivots) is_pivot[p] = true;
    std::vector<QVector> basis;
    for (size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        QVector v(n);
        v[f] = 1;
        for (size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
    if (b.size() != m.rows()) throw Error(ErrorKind::DimensionMismatch, "right-hand side length");
    QMatrix aug(m.rows(), m.cols() + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    RowEchelon e = row_echelon(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    QVector x(m.cols());
    for (size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, m.cols());
    return x;
}

std::optional<QVector> span_membership(const std::vector<QVector>& basis, const QVector& v) {
    for (const auto& b : basis)
        if (b.size() != v.size()) throw Error(ErrorKind::DimensionMismatch, "basis vector length differs from v");
    if (basis.empty()) {
        if (is_zero(v)) return QVector{};
        return std::nullopt;
    }
    return solve(QMatrix::from_columns(basis, v.size()), v);
}

QMatrix inverse(const QMatrix& m) {
    if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
    const size_t n = m.rows();
    QMatrix aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    RowEchelon e = row_echelon(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) {
        throw Error(ErrorKind::DivisionByZero, "matrix is singular");
    }
    QMatrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

Rational determinant(const QMatrix& m) {
    if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
    const size_t n = m.rows();
    if (n == 0) return 1;
    std::vector<Integer> scales;
    BareissResult b = bareiss(integer_rows(m, &scales), n);
    if (b.pivots.size() < n) return 0;
    Rational det(b.rows[n - 1][n - 1] * b.swap_sign);
    for (const auto& s : scales) det /= s;
    return det;
}

Rational charpoly_trace(const QMatrix& m) {
    if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "trace of non-square matrix");
    Rational t(0);
    for (size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

std::vector<QVector> subspace_intersection(const std::vector<QVector>& a, const std::vector<QVector>& b) {
    if (a.empty() || b.empty()) return {};
    const size_t n = a.front().size();
    // Independent generators first, so kernel vectors map injectively.
    auto independent = [n](const std::vector<QVector>& v) {
        RowEchelon e = row_echelon(QMatrix::from_rows(v, n));
        std::vector<QVector> out;
        for (size_t i = 0; i < e.pivots.size(); ++i) out.push_back(e.reduced.row(i));
        return out;
    };
    std::vector<QVector> ia = independent(a), ib = independent(b);
    std::vector<QVector> cols = ia;
    for (const auto& v : ib) {
        QVector w(v);
        for (auto& x : w) x = -x;
        cols.push_back(std::move(w));
    }
    std::vector<QVector> ker = kernel_basis(QMatrix::from_columns(cols, n));
    std::vector<QVector> out;
    for (const auto& k : ker) {
        QVector w(n);
        for (size_t i = 0; i < ia.size(); ++i)
            if (k[i] != 0)
                for (size_t j = 0; j < n; ++j) w[j] += k[i] * ia[i][j];
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace weil

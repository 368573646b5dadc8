#include "grlat/qmatrix.hpp"

#include <utility>

#include "grlat/errors.hpp"

namespace grlat {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QVector QMatrix::row(std::size_t i) const {
    QVector v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

void QMatrix::set_row(std::size_t i, const QVector& v) {
    if (v.size() != cols_) throw DimensionMismatch("set_row: length mismatch");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

void QMatrix::append_row(const QVector& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) throw DimensionMismatch("append_row: length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

QMatrix QMatrix::pow(std::int64_t k) const {
    if (!is_square()) throw DimensionMismatch("pow: matrix not square");
    if (k < 0) throw Error("pow: negative exponent");
    QMatrix result = identity(rows_);
    for (std::int64_t i = 0; i < k; ++i) result = result * (*this);
    return result;
}

bool QMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool QMatrix::is_zero() const {
    for (const auto& x : data_)
        if (sgn(x) != 0) return false;
    return true;
}

Rational QMatrix::trace() const {
    if (!is_square()) throw DimensionMismatch("trace: matrix not square");
    Rational t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

void QMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k)
        std::swap((*this)(i, k), (*this)(j, k));
}

Rational QMatrix::det() const {
    if (!is_square()) throw DimensionMismatch("det: matrix not square");
    QMatrix a = *this;
    const std::size_t n = rows_;
    Rational d = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(a(pivot, col)) == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            a.swap_rows(pivot, col);
            d = -d;
        }
        d *= a(col, col);
        const Rational inv = 1 / a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (sgn(a(i, col)) == 0) continue;
            const Rational f = a(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return d;
}

QMatrix QMatrix::inverse() const {
    if (!is_square()) throw DimensionMismatch("inverse: matrix not square");
    const std::size_t n = rows_;
    QMatrix a = *this;
    QMatrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(a(pivot, col)) == 0) ++pivot;
        if (pivot == n) throw SingularMatrix("inverse: singular matrix");
        a.swap_rows(pivot, col);
        inv.swap_rows(pivot, col);
        const Rational pinv = 1 / a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= pinv;
            inv(col, j) *= pinv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || sgn(a(i, col)) == 0) continue;
            const Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix add: shape mismatch");
    QMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix sub: shape mismatch");
    QMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix mul: shape mismatch");
    QMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (sgn(a(i, k)) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

QMatrix operator*(const Rational& c, const QMatrix& a) {
    QMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = c * a(i, j);
    return r;
}

QMatrix vstack(const QMatrix& a, const QMatrix& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column mismatch");
    QMatrix c(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
    return c;
}

QMatrix matrix_from_rows(const std::vector<QVector>& rows, std::size_t cols) {
    QMatrix m(0, cols);
    // ensure fixed column count even with no rows
    if (rows.empty()) return QMatrix(0, cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw DimensionMismatch("matrix_from_rows: length mismatch");
        m.append_row(r);
    }
    return m;
}

QVector operator+(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector add: length mismatch");
    QVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

QVector operator-(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector sub: length mismatch");
    QVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

QVector operator*(const Rational& c, const QVector& v) {
    QVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

QVector mul_row(const QVector& v, const QMatrix& m) {
    if (v.size() != m.rows()) throw DimensionMismatch("mul_row: length mismatch");
    QVector r(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (sgn(v[i]) == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m(i, j);
    }
    return r;
}

bool is_zero(const QVector& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

Rational dot_form(const QVector& x, const QMatrix& form, const QVector& y) {
    if (x.size() != form.rows() || y.size() != form.cols())
        throw DimensionMismatch("dot_form: shape mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (sgn(x[i]) == 0) continue;
        Rational inner = 0;
        for (std::size_t j = 0; j < y.size(); ++j) inner += form(i, j) * y[j];
        acc += x[i] * inner;
    }
    return acc;
}

std::optional<QVector> solve_row_system(const QMatrix& x, const QVector& v) {
    // c * X = v  <=>  X^T c^T = v^T; Gaussian elimination on the augmented
    // transpose.  Free variables (dependent rows of X) are set to zero.
    if (v.size() != x.cols()) throw DimensionMismatch("solve_row_system: length mismatch");
    const std::size_t n = x.cols();   // equations
    const std::size_t r = x.rows();   // unknowns
    QMatrix aug(n, r + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < r; ++j) aug(i, j) = x(j, i);
        aug(i, r) = v[i];
    }
    std::vector<std::size_t> pivot_of_row;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r && row < n; ++col) {
        std::size_t piv = row;
        while (piv < n && sgn(aug(piv, col)) == 0) ++piv;
        if (piv == n) continue;
        aug.swap_rows(piv, row);
        const Rational pinv = 1 / aug(row, col);
        for (std::size_t j = col; j <= r; ++j) aug(row, j) *= pinv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || sgn(aug(i, col)) == 0) continue;
            const Rational f = aug(i, col);
            for (std::size_t j = col; j <= r; ++j) aug(i, j) -= f * aug(row, j);
        }
        pivot_of_row.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        if (sgn(aug(i, r)) != 0) return std::nullopt;  // inconsistent
    QVector c(r, Rational(0));
    for (std::size_t i = 0; i < pivot_of_row.size(); ++i) c[pivot_of_row[i]] = aug(i, r);
    return c;
}

std::size_t rank_q(const QMatrix& m) {
    QMatrix a = m;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < a.rows() && sgn(a(piv, col)) == 0) ++piv;
        if (piv == a.rows()) continue;
        a.swap_rows(piv, rank);
        const Rational pinv = 1 / a(rank, col);
        for (std::size_t i = rank + 1; i < a.rows(); ++i) {
            if (sgn(a(i, col)) == 0) continue;
            const Rational f = a(i, col) * pinv;
            for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

}  // namespace grlat

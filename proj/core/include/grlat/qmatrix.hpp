#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "grlat/rational.hpp"

namespace grlat {

using QVector = std::vector<Rational>;

/// Dense matrix of exact rationals.  Row-vector convention throughout the
/// library: lattices are row spans and group actions multiply on the right.
class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    QVector row(std::size_t i) const;
    void set_row(std::size_t i, const QVector& v);
    void append_row(const QVector& v);

    QMatrix transpose() const;
    QMatrix pow(std::int64_t k) const;  // k >= 0, square only

    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;
    bool is_zero() const;
    Rational trace() const;

    Rational det() const;               // square only
    QMatrix inverse() const;            // throws SingularMatrix

    void swap_rows(std::size_t i, std::size_t j);

    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const Rational& c, const QMatrix& a);

/// Stacks b below a (column counts must agree; an empty matrix is neutral).
QMatrix vstack(const QMatrix& a, const QMatrix& b);
QMatrix matrix_from_rows(const std::vector<QVector>& rows, std::size_t cols);

QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
QVector operator*(const Rational& c, const QVector& v);
/// v * M (row vector times matrix).
QVector mul_row(const QVector& v, const QMatrix& m);
bool is_zero(const QVector& v);

/// x * F * y^T.
Rational dot_form(const QVector& x, const QMatrix& form, const QVector& y);

/// Solves c * X = v exactly.  Returns nullopt when v is not in the row span;
/// the solution is unique when the rows of X are linearly independent.
std::optional<QVector> solve_row_system(const QMatrix& x, const QVector& v);

/// Rank over Q.
std::size_t rank_q(const QMatrix& m);

}  // namespace grlat

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fanosplit/error.hpp"
#include "fanosplit/field.hpp"

namespace fanosplit {

using Vector = std::vector<FieldElement>;

/// Dense row-major matrix over a Field. Exact Gaussian elimination only.
class Matrix {
 public:
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

  static Matrix from_rows(Field f, const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw ArityMismatch("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  FieldElement& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const FieldElement& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vector row(std::size_t i) const { return Vector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

  void append_row(const Vector& v) {
    if (v.size() != cols_) throw ArityMismatch("row length mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++rows_;
  }

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref_in_place() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && (*this)(p, c).is_zero()) ++p;
      if (p == rows_) continue;
      if (p != r) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
      }
      const FieldElement inv = (*this)(r, c).inv();
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c).is_zero()) continue;
        const FieldElement f = (*this)(i, c);
        for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::pair<Matrix, std::vector<std::size_t>> rref() const {
    Matrix m = *this;
    auto piv = m.rref_in_place();
    return {std::move(m), std::move(piv)};
  }

  std::size_t rank() const { return rref().second.size(); }

  /// Basis of {x : A x = 0}, one vector per free column.
  std::vector<Vector> kernel() const {
    auto [m, piv] = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      Vector v(cols_, field_.zero());
      v[free] = field_.one();
      for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// Some x with A x = b, or nullopt if inconsistent.
  std::optional<Vector> solve(const Vector& b) const {
    if (b.size() != rows_) throw ArityMismatch("right-hand side length mismatch");
    Matrix aug(field_, rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b[i];
    }
    auto piv = aug.rref_in_place();
    if (!piv.empty() && piv.back() == cols_) return std::nullopt;
    Vector x(cols_, field_.zero());
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, cols_);
    return x;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw ArityMismatch("matrix product shape mismatch");
    Matrix out(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t l = 0; l < cols_; ++l) {
        if ((*this)(i, l).is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += (*this)(i, l) * o(l, j);
      }
    return out;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElement> a_;
};

/// Dimension of the span of the given vectors.
inline std::size_t span_dim(Field f, const std::vector<Vector>& vs, std::size_t len) {
  if (vs.empty()) return 0;
  return Matrix::from_rows(f, vs, len).rank();
}

}  // namespace fanosplit

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "jsv/exact/rational.hpp"

namespace jsv {

/// Small dense square-or-rectangular matrix over a commutative ring T.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  /// Determinant by cofactor expansion (intended for dimension <= 5).
  T determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
    if (rows_ == 0) return T(1);
    if (rows_ == 1) return data_[0];
    T det(0);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (is_zero((*this)(0, c))) continue;
      T term = (*this)(0, c) * minor(0, c).determinant();
      if (c % 2 == 0)
        det += term;
      else
        det -= term;
    }
    return det;
  }

  /// Classical adjoint: adj(A) * A = det(A) * I.
  Matrix adjugate() const {
    if (rows_ != cols_) throw std::invalid_argument("adjugate of a non-square matrix");
    Matrix out(rows_, cols_);
    if (rows_ == 1) {
      out(0, 0) = T(1);
      return out;
    }
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        T cof = minor(i, j).determinant();
        out(j, i) = (i + j) % 2 == 0 ? cof : T(0) - cof;
      }
    return out;
  }

  Matrix minor(std::size_t skip_r, std::size_t skip_c) const {
    Matrix m(rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, r = 0; i < rows_; ++i) {
      if (i == skip_r) continue;
      for (std::size_t j = 0, c = 0; j < cols_; ++j) {
        if (j == skip_c) continue;
        m(r, c++) = (*this)(i, j);
      }
      ++r;
    }
    return m;
  }

 private:
  static bool is_zero(const T& v) { return v == T(0); }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Rank over Q by exact Gaussian elimination.
std::size_t rank(std::vector<std::vector<Rational>> rows);

/// Inverse over Q; throws ArithmeticError when singular.
Matrix<Rational> inverse(const Matrix<Rational>& m);

}  // namespace jsv

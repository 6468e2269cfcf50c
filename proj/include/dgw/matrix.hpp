#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dgw/rational.hpp"

namespace dgw {

/// Dense row-major matrix of exact rationals. Column vectors are n x 1
/// matrices; a linear map V -> W is stored as dim W x dim V.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix column(std::span<const Rational> entries);
  static Matrix unit_column(std::size_t n, std::size_t i);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  std::size_t nonzeros() const;

  Matrix transpose() const;
  Matrix col(std::size_t c) const;
  Matrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  Matrix select_cols(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;

  /// Writes `block` with its (0,0) entry at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const Matrix& block);
  /// Scatters `block` into the given row/column positions.
  void scatter(std::span<const std::size_t> rows, std::span<const std::size_t> cols, const Matrix& block);
  void set_col(std::size_t c, const Matrix& v);

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Rational& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= Rational(-1); }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
  friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const Matrix& a, const Matrix& b);
/// Kronecker product, left factor major: (a (x) b)(i*rb + k, j*cb + l) = a(i,j) b(k,l).
Matrix kronecker(const Matrix& a, const Matrix& b);

namespace kernels {
/// Reference product, no threading.
Matrix multiply_serial(const Matrix& a, const Matrix& b);
/// Row-parallel product (OpenMP when available). Same result as the serial one.
Matrix multiply_parallel(const Matrix& a, const Matrix& b);
}  // namespace kernels

}  // namespace dgw

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nqd/scalar.hpp"

namespace nqd {

using Vector = std::vector<Scalar>;

struct Entry {
  std::size_t index;
  Scalar value;
  bool operator==(const Entry&) const = default;
};

/// Sparse vector with strictly increasing indices and no stored zeros.
using SparseVector = std::vector<Entry>;

// Dense vector helpers.
Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(std::span<const Scalar> v);
void axpy(Vector& y, const Scalar& a, std::span<const Scalar> x);  // y += a*x
Vector add(std::span<const Scalar> a, std::span<const Scalar> b);
Vector sub(std::span<const Scalar> a, std::span<const Scalar> b);
Vector scaled(std::span<const Scalar> v, const Scalar& a);
Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b);
std::string to_string(std::span<const Scalar> v);

// Sparse vector helpers.
SparseVector to_sparse(std::span<const Scalar> v);
Vector to_dense(const SparseVector& v, std::size_t n);
/// v + a*w.
SparseVector sparse_axpy(const SparseVector& v, const Scalar& a, const SparseVector& w);
SparseVector sparse_scaled(const SparseVector& v, const Scalar& a);
Scalar sparse_at(const SparseVector& v, std::size_t index);

/// Dense row-major matrix over one field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  Vector column(std::size_t c) const;

  Matrix transpose() const;
  Vector apply(std::span<const Scalar> x) const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

}  // namespace nqd

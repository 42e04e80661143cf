#include "nqd/matrix.hpp"

#include "nqd/errors.hpp"

namespace nqd {

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(std::span<const Scalar> v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

void axpy(Vector& y, const Scalar& a, std::span<const Scalar> x) {
  if (y.size() != x.size()) throw DimensionMismatch("axpy: length mismatch");
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
}

Vector add(std::span<const Scalar> a, std::span<const Scalar> b) {
  Vector r(a.begin(), a.end());
  axpy(r, 1, b);
  return r;
}

Vector sub(std::span<const Scalar> a, std::span<const Scalar> b) {
  Vector r(a.begin(), a.end());
  axpy(r, -1, b);
  return r;
}

Vector scaled(std::span<const Scalar> v, const Scalar& a) {
  Vector r(v.size());
  if (a.is_zero()) {
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * a;
    return r;
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r[i] = v[i] * a;
  return r;
}

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

std::string to_string(std::span<const Scalar> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

SparseVector to_sparse(std::span<const Scalar> v) {
  SparseVector r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r.push_back({i, v[i]});
  return r;
}

Vector to_dense(const SparseVector& v, std::size_t n) {
  Vector r(n);
  for (const auto& e : v) r.at(e.index) = e.value;
  return r;
}

SparseVector sparse_axpy(const SparseVector& v, const Scalar& a, const SparseVector& w) {
  if (a.is_zero()) return v;
  SparseVector r;
  r.reserve(v.size() + w.size());
  std::size_t i = 0, j = 0;
  while (i < v.size() || j < w.size()) {
    if (j == w.size() || (i < v.size() && v[i].index < w[j].index)) {
      r.push_back(v[i++]);
    } else if (i == v.size() || w[j].index < v[i].index) {
      r.push_back({w[j].index, a * w[j].value});
      ++j;
    } else {
      Scalar s = v[i].value + a * w[j].value;
      if (!s.is_zero()) r.push_back({v[i].index, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

SparseVector sparse_scaled(const SparseVector& v, const Scalar& a) {
  if (a.is_zero()) return {};
  SparseVector r;
  r.reserve(v.size());
  for (const auto& e : v) r.push_back({e.index, e.value * a});
  return r;
}

Scalar sparse_at(const SparseVector& v, std::size_t index) {
  std::size_t lo = 0, hi = v.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (v[mid].index < index)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < v.size() && v[lo].index == index) return v[lo].value;
  return Scalar();
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw DimensionMismatch("from_columns: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
  }
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Vector Matrix::apply(std::span<const Scalar> x) const {
  if (x.size() != cols_) throw DimensionMismatch("apply: length mismatch");
  Vector y(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (x[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r)
      if (!at(r, c).is_zero()) y[r] += at(r, c) * x[c];
  }
  return y;
}

bool Matrix::is_zero() const { return nqd::is_zero(data_); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimension mismatch");
  Matrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b.at(k, j).is_zero()) p.at(i, j) += x * b.at(k, j);
    }
  return p;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum: shape mismatch");
  Matrix s = a;
  for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
  return s;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference: shape mismatch");
  Matrix s = a;
  for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] -= b.data_[i];
  return s;
}

}  // namespace nqd

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nqd/echelon.hpp"
#include "nqd/matrix.hpp"

namespace nqd {

/// A linear subspace of k^n stored as its reduced row-echelon basis (leftmost
/// pivots, pivot entries 1). The representation is canonical: two subspaces
/// are equal exactly when their stored rows are equal.
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace of k^ambient.
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<SparseVector>& generators);
  static Subspace span(const Matrix& rows);
  static Subspace full(std::size_t ambient);
  /// Canonicalizes an echelon basis of any lead order.
  static Subspace from_echelon(const EchelonBasis& basis);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  std::size_t codim() const { return ambient_ - rows_.size(); }
  const std::vector<SparseVector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<std::size_t> non_pivots() const;
  /// Row whose pivot sits in `column`, or -1.
  std::int32_t pivot_row(std::size_t column) const {
    return pivot_row_.empty() ? -1 : pivot_row_[column];
  }
  Matrix basis_matrix() const;

  /// Remainder of v after clearing its pivot-column entries; zero iff v lies in
  /// the subspace. Supported on non-pivot columns only.
  SparseVector reduce(const SparseVector& v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b);
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  std::size_t ambient_ = 0;
  std::vector<SparseVector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::int32_t> pivot_row_;  // column -> row, -1 if none
  void index_pivots();
};

struct RowReduction {
  Matrix reduced;  // nonzero rows only
  std::vector<std::size_t> pivots;
};

RowReduction row_reduce(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Solution space of m x = 0.
Subspace kernel(const Matrix& m);
/// {f in (k^n)* : f(u) = 0}, identified with k^n through the standard pairing.
Subspace annihilator(const Subspace& u);
/// (u ∩ w, u + w).
std::pair<Subspace, Subspace> meet_join(const Subspace& u, const Subspace& w);
Subspace intersect(const Subspace& u, const Subspace& w);
Subspace sum(const Subspace& u, const Subspace& w);

/// Unique x with m x = b when m is square invertible; throws otherwise.
Vector solve(const Matrix& m, std::span<const Scalar> b);
/// Inverse of a square matrix; throws InvariantViolation if singular.
Matrix inverse(const Matrix& m);
/// Some x with m x = b, or nullopt if the system is inconsistent.
std::optional<Vector> solve_any(const Matrix& m, std::span<const Scalar> b);

}  // namespace nqd

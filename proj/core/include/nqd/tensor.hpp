#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nqd/subspace.hpp"

namespace nqd {

using Word = std::vector<std::size_t>;

/// g^n; throws DimensionMismatch if the result does not fit in size_t.
std::size_t ipow(std::size_t g, std::size_t n);

/// Words of length `degree` in `gen_dim` letters, enumerated lexicographically:
/// word (w_1..w_n) has index sum_i w_i g^(n-i).
class TensorBasis {
 public:
  TensorBasis(std::size_t gen_dim, std::size_t degree);
  std::size_t gen_dim() const { return gen_dim_; }
  std::size_t degree() const { return degree_; }
  std::size_t size() const { return size_; }

 private:
  std::size_t gen_dim_;
  std::size_t degree_;
  std::size_t size_;
};

std::size_t word_index(std::span<const std::size_t> word, const TensorBasis& basis);
Word index_word(std::size_t index, const TensorBasis& basis);

/// Index of the concatenation uw given the index of u and of w (|w| = tail_degree).
inline std::size_t concat_index(std::size_t u, std::size_t w, std::size_t gen_dim, std::size_t tail_degree) {
  return u * ipow(gen_dim, tail_degree) + w;
}

/// T_n(V) = k + V + ... + V^n, with the degree blocks laid out in ascending order.
class FilteredTensorBasis {
 public:
  FilteredTensorBasis(std::size_t gen_dim, std::size_t bound);
  std::size_t gen_dim() const { return gen_dim_; }
  std::size_t bound() const { return bound_; }
  std::size_t size() const { return offsets_.back(); }
  /// First index of the degree-m block (m <= bound + 1).
  std::size_t offset(std::size_t m) const { return offsets_.at(m); }
  std::size_t block_size(std::size_t m) const { return offsets_.at(m + 1) - offsets_.at(m); }
  std::size_t index(std::size_t degree, std::size_t local) const { return offsets_.at(degree) + local; }
  /// Degree of the block containing a filtered index.
  std::size_t degree_of(std::size_t index) const;

 private:
  std::size_t gen_dim_;
  std::size_t bound_;
  std::vector<std::size_t> offsets_;
};

/// Sum over a+2+b = n of V^a (x) I (x) V^b, as a subspace of V^n. Zero for n < 2.
Subspace homogeneous_ideal_component(const Subspace& relations, std::size_t gen_dim, std::size_t n);

/// The same components for every degree 0..max_degree, built incrementally via
/// I_n = I_{n-1} (x) V + V^{n-2} (x) I.
std::vector<Subspace> homogeneous_ideal_components(const Subspace& relations, std::size_t gen_dim,
                                                   std::size_t max_degree);

/// Re-expresses coordinates in T_m(V) as coordinates in T_n(V), n >= m.
SparseVector embed_filtered(const SparseVector& element, const FilteredTensorBasis& from,
                            const FilteredTensorBasis& to);

}  // namespace nqd

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nqd/cdg.hpp"
#include "nqd/presentation.hpp"
#include "nqd/quadratic.hpp"

namespace nqd {

/// Column-sparse matrix: columns[j] is the image of basis vector j.
struct SparseMap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparseVector> columns;

  SparseMap() = default;
  SparseMap(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

  bool is_zero() const;
  SparseMap transpose() const;
  SparseVector apply(const SparseVector& x) const;
  Matrix dense() const;
};

/// a * b (b applied first).
SparseMap operator*(const SparseMap& a, const SparseMap& b);
SparseMap operator+(const SparseMap& a, const SparseMap& b);
std::size_t rank(const SparseMap& m);

/// Basis of (B_+)^{(x)n} in internal degree m: tensors (b_1|...|b_n) of normal
/// basis elements with degrees summing to m, grouped by degree composition
/// (compositions in lex order, last factor varying fastest).
class BarBasis {
 public:
  BarBasis(const GradedAlgebra& b, std::size_t n, std::size_t m);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t size() const { return size_; }

  /// (degree, basis index) of each factor.
  std::vector<std::pair<std::size_t, std::size_t>> decode(std::size_t idx) const;
  /// Inverse of decode; the factors must have positive degrees.
  std::size_t encode(const std::vector<std::pair<std::size_t, std::size_t>>& factors) const;
  std::string label(const GradedAlgebra& b, std::size_t idx) const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::size_t size_ = 0;
  std::vector<std::size_t> dims_;  // dim B_i for i <= m
  std::vector<std::vector<std::size_t>> comps_;
  std::vector<std::size_t> offsets_;
  std::map<std::vector<std::size_t>, std::size_t> comp_index_;
};

/// The bar complex of a CDG-algebra with B^0 = k, truncated at internal degree M.
/// partial has bidegree (n, m) -> (n-1, m), differential (n, m) -> (n, m+1),
/// curvature insertion (n, m) -> (n+1, m+2). Maps landing above M are dropped.
class BarComplex {
 public:
  BarComplex(CdgAlgebra psi, std::size_t max_internal);
  /// The homogeneous bar complex of a connected graded algebra (d = 0, h = 0).
  BarComplex(AlgebraPtr b, std::size_t max_internal);

  const GradedAlgebra& algebra() const { return *base_; }
  std::size_t max_internal() const { return max_; }
  /// 0 when d = h = 0, 1 when only d is nonzero, 2 when h is nonzero.
  std::size_t reach() const;

  const BarBasis& basis(std::size_t n, std::size_t m) const;
  const SparseMap& partial(std::size_t n, std::size_t m) const;
  const SparseMap& differential(std::size_t n, std::size_t m) const;
  const SparseMap& curvature_insertion(std::size_t n, std::size_t m) const;

  /// Window part of total degree k (= m - n), ordered by internal degree m
  /// ascending. offset(k, m) is the first index of bar(m - k, m).
  std::size_t total_size(std::size_t k) const;
  std::size_t total_offset(std::size_t k, std::size_t m) const;
  /// D = partial + d + delta from total degree k to k + 1 inside the window.
  SparseMap total(std::size_t k) const;

 private:
  enum class Kind { Partial, Differential, Curvature };
  const SparseMap& cached(Kind kind, std::size_t n, std::size_t m) const;
  SparseMap build(Kind kind, std::size_t n, std::size_t m) const;

  AlgebraPtr base_;
  std::optional<CdgAlgebra> psi_;
  std::size_t max_;
  std::vector<std::vector<SparseVector>> d_cols_;  // d on basis of B^i, as sparse columns
  SparseVector h_;
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<BarBasis>> bases;
    std::map<std::tuple<int, std::size_t, std::size_t>, std::unique_ptr<SparseMap>> maps;
  };
  std::shared_ptr<Cache> cache_;
};

/// Parity of the sign in front of each term.
/// partial merging factors k, k+1 (1-based): i_1 + ... + i_k + k.
/// d on factor k and h inserted before factor k: i_1 + ... + i_{k-1} + k - 1.
int partial_sign(const std::vector<std::size_t>& degrees, std::size_t k);
int insertion_sign(const std::vector<std::size_t>& degrees, std::size_t k);

struct SquareZeroCheck {
  std::string identity;  // e.g. "d^2 + partial delta + delta partial"
  std::size_t n = 0;     // source bidegree
  std::size_t m = 0;
  bool ok = true;
};

struct SquareZeroReport {
  bool ok = true;
  std::vector<SquareZeroCheck> checks;  // failing checks first-found order
  std::size_t evaluated = 0;
};

/// The five bidegree components of (partial + d + delta)^2 and the assembled
/// total D^2, on every source whose target internal degree is at most M.
SquareZeroReport check_square_zero(const BarComplex& bar);

struct BarCohomology {
  std::size_t index = 0;             // total degree k
  std::size_t max_internal = 0;      // M
  std::vector<std::size_t> filtered;  // dim F_m H^b_k, m = 0..M
  std::vector<bool> edge;             // true where truncation may affect the value
};

/// Cohomology of the cobar complex (the transpose of the bar window) in degree k,
/// filtered by internal degree: dim F_m = dim(Z cap F_m) - dim(B cap F_m).
BarCohomology bar_cohomology(const BarComplex& bar, std::size_t k);
BarCohomology bar_cohomology(const CdgAlgebra& psi, std::size_t k, std::size_t max_internal);

/// Boundaries of the cobar complex in degree 0 meeting T_m(V), as subspaces of
/// filtered coordinates of T_m(V) (words of V = (B^1)^*), m = 0..M.
std::vector<Subspace> h0_boundaries(const BarComplex& bar);

struct H0Comparison {
  std::size_t max_degree = 0;
  std::size_t slack = 0;
  std::vector<std::size_t> bar_dims;         // dim F_m H^b_0
  std::vector<std::size_t> filtration_dims;  // dim F_m A(psi) by saturation
  std::vector<bool> subspaces_equal;          // boundaries = J cap T_m exactly
  std::vector<bool> edge;
  std::optional<std::size_t> first_mismatch;
  bool ok = true;
};

/// Compares H^b_0 with the filtered algebra A(psi) for m <= N, using the bar window
/// M = N + slack and saturation reaching total degree M.
H0Comparison h0_compare(const CdgAlgebra& psi, std::size_t max_degree, std::size_t slack);

struct PbwVerdict {
  std::size_t max_degree = 0;
  std::vector<std::size_t> gr_dims;    // Gr A(psi) by saturation
  std::vector<std::size_t> dual_dims;  // quadratic dual of the base
  bool holds = true;
  std::optional<std::size_t> first_failure;
  KoszulVerdict base_koszul;  // sufficient conditions, on B
};

PbwVerdict pbw_check(const CdgAlgebra& psi, std::size_t max_degree, std::size_t slack);

}  // namespace nqd

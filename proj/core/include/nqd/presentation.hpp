#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nqd/quadratic.hpp"
#include "nqd/subspace.hpp"
#include "nqd/tensor.hpp"

namespace nqd {

/// Relations p + phi(p) + h(p) = 0 for p in I, with I inside V (x) V.
/// phi and h are stored on the canonical basis of I: row r of `phi` is
/// phi(I.rows()[r]) in V, and h[r] = h(I.rows()[r]).
class NQPresentation {
 public:
  NQPresentation(std::vector<std::string> gen_names, Subspace quadratic, Matrix phi, Vector h,
                 Field field = Field::rational(), std::optional<Vector> augmentation = std::nullopt);

  /// Builds a presentation from arbitrary relations given in filtered
  /// coordinates of T_2(V) (scalar, then V, then V (x) V). Throws
  /// InvariantViolation when the relations meet k + V.
  static NQPresentation from_relations(std::vector<std::string> gen_names, const std::vector<SparseVector>& relations,
                                       Field field = Field::rational(),
                                       std::optional<Vector> augmentation = std::nullopt);

  std::size_t gen_dim() const { return names_.size(); }
  const std::vector<std::string>& gen_names() const { return names_; }
  Field field() const { return field_; }
  const Subspace& quadratic_part() const { return quadratic_; }
  const Matrix& phi() const { return phi_; }
  const Vector& h() const { return h_; }
  const std::optional<Vector>& augmentation() const { return augmentation_; }
  bool is_homogeneous() const { return phi_.is_zero() && nqd::is_zero(h_); }

  /// Coordinates of p in the canonical basis of I (throws if p is not in I).
  Vector coordinates(const SparseVector& p) const;
  /// phi(p) in V and h(p) for any p in I.
  Vector phi_of(const SparseVector& p) const;
  Scalar h_of(const SparseVector& p) const;

  /// The underlying quadratic algebra A^(0) = T(V)/(I).
  QuadraticAlgebra underlying() const;

 private:
  std::vector<std::string> names_;
  Subspace quadratic_;
  Matrix phi_;
  Vector h_;
  Field field_;
  std::optional<Vector> augmentation_;
};

bool operator==(const NQPresentation& a, const NQPresentation& b);

/// J_2 = {p + phi(p) + h(p)} in filtered coordinates of T_2(V).
Subspace j2_subspace(const NQPresentation& p);

struct SaturationResult {
  std::size_t degree = 0;
  std::size_t slack = 0;
  Subspace space;                    // J cap T_n, in filtered coordinates of T_n(V)
  std::vector<std::size_t> dims;     // dim J cap T_n after allowing n + s, s = 0..slack
  bool stabilized = false;
};

/// Saturation of J_2 in every degree n <= N: span{x q y : |x|+|y|+2 <= n+s}
/// intersected with T_n(V), for s = 0..slack, computed in one incremental pass.
struct SaturationTower {
  std::size_t max_degree = 0;
  std::size_t slack = 0;
  bool homogeneous = false;
  std::vector<std::vector<std::size_t>> dims;  // dims[n][s]
  std::vector<Subspace> spaces;                // spaces[n] at s = slack
  bool stabilized(std::size_t n) const;
};

SaturationTower saturate_all(const NQPresentation& p, std::size_t max_degree, std::size_t slack);
SaturationResult saturate(const NQPresentation& p, std::size_t n, std::size_t slack);

struct FiltrationReport {
  std::size_t max_degree = 0;
  std::size_t slack = 0;
  std::vector<std::size_t> filtered;   // dim F_n
  std::vector<std::size_t> graded;     // dim Gr_n
  std::vector<bool> stabilized;
};

FiltrationReport filtration_dims(const NQPresentation& p, std::size_t max_degree, std::size_t slack);

struct WeakQlsVerdict {
  FiltrationReport filtration;
  std::vector<std::size_t> quadratic_dims;  // dims of A^(0)_n
  std::optional<std::size_t> first_mismatch;
  bool quadratic_gr = true;
  bool pbw = true;
};

WeakQlsVerdict weak_qls_check(const NQPresentation& p, std::size_t max_degree, std::size_t slack);

/// Rewrites the relations for the complement V' = {v + alpha(v)}:
/// phi' = phi - alpha_1 - alpha_2, h' = h - alpha o phi + (alpha (x) alpha)|_I.
NQPresentation change_complement(const NQPresentation& p, std::span<const Scalar> alpha);

/// Filtered algebra automorphism of T(V) sending v to v + alpha(v), on T_n(V).
SparseVector substitute_shift(const SparseVector& x, std::span<const Scalar> alpha, const FilteredTensorBasis& basis);

/// Throws InvariantViolation unless the augmentation kills J_2.
void validate_augmentation(const NQPresentation& p);

/// Moves to the complement ker(eps) cap F_1; the result has h = 0 and zero augmentation.
NQPresentation augmentation_shift(const NQPresentation& p);

/// Relation text such as "x.y - y.x - z" for each basis row of J_2.
std::vector<std::string> relation_strings(const NQPresentation& p);

}  // namespace nqd

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nqd/cdg.hpp"
#include "nqd/graded_algebra.hpp"

namespace nqd {

/// Mat_r (x) Lambda(e_1..e_m), graded by form degree. Basis element (i, j, S)
/// of degree |S| sits at index (i*r + j)*C(m, |S|) + rank of S among the
/// |S|-subsets in lexicographic order.
class MatrixExteriorAlgebra final : public GradedAlgebra {
 public:
  MatrixExteriorAlgebra(std::size_t rank, std::size_t exterior_dim, Field field = Field::rational());

  std::size_t rank() const { return r_; }
  std::size_t exterior_dim() const { return m_; }

  Field field() const override { return field_; }
  std::size_t dim(std::size_t n) const override;
  SparseVector basis_product(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const override;
  Vector unit() const override;
  const std::vector<Generator>& generators() const override { return gens_; }
  std::vector<std::size_t> basis_word(std::size_t n, std::size_t idx) const override;
  std::string label(std::size_t n, std::size_t idx) const override;
  std::optional<std::size_t> top_degree() const override { return m_; }
  bool same_as(const GradedAlgebra& other) const override;

  std::size_t index(std::size_t i, std::size_t j, const std::vector<std::size_t>& subset) const;
  /// Generator index of E_ij and of 1 (x) e_a.
  std::size_t matrix_generator(std::size_t i, std::size_t j) const { return i * r_ + j; }
  std::size_t form_generator(std::size_t a) const { return r_ * r_ + a; }
  const std::vector<std::vector<std::size_t>>& subsets(std::size_t n) const { return subsets_.at(n); }

 private:
  std::size_t r_;
  std::size_t m_;
  Field field_;
  std::vector<std::vector<std::vector<std::size_t>>> subsets_;  // by size
  std::vector<Generator> gens_;
};

/// d(E_ij) = [alpha0, E_ij], d(e_a) = d0(e_a) + [alpha0, e_a], h = d0(alpha0) + alpha0^2.
/// `d0` gives d0(e_a) in Lambda^2 (C(m,2) coordinates); `alpha0` lies in degree one.
/// Throws InvariantViolation unless d0^2 = 0 on the exterior factor.
CdgAlgebra matrix_connection(std::size_t rank, std::size_t exterior_dim, const Vector& alpha0,
                             const std::vector<Vector>& d0, Field field = Field::rational());

}  // namespace nqd

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nqd/cdg.hpp"
#include "nqd/duality.hpp"
#include "nqd/matrix_exterior.hpp"
#include "nqd/presentation.hpp"

namespace nqd {

/// Structure constants [x_i, x_j] = sum_k c(i, j)[k] x_k. Antisymmetry is
/// checked at construction; Jacobi is not (see lie_jacobi_holds).
class LieData {
 public:
  LieData(std::vector<std::string> names, std::vector<std::vector<Vector>> brackets, Field field = Field::rational());
  /// Zero brackets everywhere, then set_bracket for each nonzero pair.
  static LieData abelian(std::vector<std::string> names, Field field = Field::rational());
  LieData& set_bracket(std::size_t i, std::size_t j, Vector value);

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  Field field() const { return field_; }
  const Vector& bracket(std::size_t i, std::size_t j) const { return c_[i][j]; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Vector>> c_;
  Field field_;
};

/// [x, y] = z.
LieData heisenberg3(Field field = Field::rational());
/// [e, f] = h, [h, e] = 2e, [h, f] = -2f.
LieData sl2(Field field = Field::rational());

/// Jacobi checked through the dual complex: the transpose of the bracket must
/// extend to a differential squaring to zero.
bool lie_jacobi_holds(const LieData& g);

/// x y - y x - [x, y] for x < y; augmentation zero.
NQPresentation enveloping(const LieData& g);
/// x y - y x - [x, y] - omega(x, y); omega is an antisymmetric dim x dim matrix.
/// Throws InvariantViolation unless omega is a Lie 2-cocycle.
NQPresentation central_extension(const LieData& g, const Matrix& omega);

/// v w + w v - Q(v, w) for v <= w (Q symmetric, else InvariantViolation).
NQPresentation clifford(std::vector<std::string> names, const Matrix& q, Field field = Field::rational());
/// v w + w v = lambda(v) w + lambda(w) v, obtained from the exterior algebra by change_complement.
NQPresentation clifford_linear(std::vector<std::string> names, const Vector& lambda, Field field = Field::rational());

/// The Weyl-type algebra x y - y x = 1 (abelian plane, symplectic cocycle).
NQPresentation weyl();
/// heis3 extended by the exact cocycle omega(x, y) = 1.
NQPresentation heisenberg_extension();
/// x y = x + y, x^2 + y z = z: a relation set whose saturation is larger than predicted.
NQPresentation pbw_counterexample();

/// Finite-dimensional augmented algebra k + A_+ with A_+ = span(a_1..a_r) and
/// a_i a_j = sum_k mult[i][j][k] a_k.
struct AugmentedAlgebra {
  std::vector<std::string> names;
  std::vector<std::vector<Vector>> mult;
  Field field = Field::rational();
};

/// Relations a_i (x) a_j - a_i a_j for all i, j (I = V (x) V, h = 0).
/// Throws InvariantViolation when the table is not associative.
NQPresentation cobar_presentation(const AugmentedAlgebra& a);
/// The reduced cobar DG-algebra: free algebra on A_+^* with d dual to the product.
CdgAlgebra cobar_of(const AugmentedAlgebra& a);

/// dim ker d_n - dim im d_{n-1} for n <= N; requires h = 0.
std::vector<std::size_t> dg_cohomology_dims(const CdgAlgebra& psi, std::size_t max_degree);

/// Background differential d0(e3) = e1 e2 on Lambda(3) and a seeded integer alpha0, r = 2.
CdgAlgebra matrix_connection_fixture(std::uint64_t seed = 17, Field field = Field::rational());

/// Pushes psi forward along an algebra automorphism f of its base given on
/// generators (with inverse): psi' = (B, f d f^-1, f(h)); returns (f, 0) : psi -> psi'.
CdgMorphism pushforward(const CdgAlgebra& psi, const std::vector<Vector>& images,
                        const std::vector<Vector>& inverse_images);

/// A random composable pair m1 : psi -> psi1, m2 : psi1 -> psi2: m1 is a pushforward
/// along a random invertible linear change of degree-one generators, m2 is a
/// random twist followed by another such pushforward. Needs a base whose
/// relations are invariant under GL of degree-one generators (exterior,
/// symmetric and free algebras, and Mat_r (x) Lambda).
std::pair<CdgMorphism, CdgMorphism> random_morphism_pair(const CdgAlgebra& psi, std::uint64_t seed);

/// Random twist element in degree one with small integer entries.
Vector random_degree_one(const GradedAlgebra& b, std::uint64_t seed);

}  // namespace nqd

#pragma once

#include <memory>
#include <optional>
#include <span>

#include "nqd/cdg.hpp"
#include "nqd/presentation.hpp"
#include "nqd/quadratic.hpp"

namespace nqd {

/// (B, d, h) with B = (A^(0))^!, d1 = phi^* and h = h_c, read through the
/// identification I^* = B^2 given by the pairing of V*(x)V* with V(x)V.
/// Throws NotADerivation when the relations fail the closure conditions
/// (the result would not satisfy the CDG axioms). With validate = false the
/// triple is returned unchecked.
CdgAlgebra dualize(const NQPresentation& p, bool validate = true);

/// Generators V = (B^1)^*, I = (B^2)^* inside V (x) V, and relations
/// p + phi(p) + h(p) = 0 with phi = d1^*. Requires a quadratic base.
NQPresentation reconstruct(const CdgAlgebra& psi);

/// Solves P_N c = lambda: the element of B^2 whose pairing with the basis of I is lambda.
Vector functional_to_b2(const QuadraticAlgebra& b, const Subspace& i, std::span<const Scalar> lambda);
/// The functional on the basis of I given by an element of B^2.
Vector b2_to_functional(const QuadraticAlgebra& b, const Subspace& i, std::span<const Scalar> element);

/// Algebra map between presentations given on generators:
/// f(v_a) = sum_b linear(b, a) v'_b + shift[a].
struct PresentationMap {
  Matrix linear;  // dim V' x dim V
  Vector shift;   // dim V
};

/// Image of an element of T_n(V) under the filtered map induced by f.
SparseVector apply_presentation_map(const PresentationMap& f, const SparseVector& x, std::size_t gen_dim,
                                    std::size_t target_gen_dim, std::size_t bound);

/// The contravariant image (linear^T, -shift) : dualize(target) -> dualize(source).
/// Throws NotAMorphism unless f carries J_2 into the span of J'_2.
CdgMorphism dualize_presentation_morphism(const NQPresentation& source, const NQPresentation& target,
                                          const PresentationMap& f);

/// The unique alpha in V* with complement = {v + alpha(v)}. The complement is
/// given by spanning vectors in filtered coordinates of T_1(V) (scalar first);
/// nullopt unless it is a graph over V.
std::optional<Vector> complement_shift(std::size_t gen_dim, const std::vector<SparseVector>& complement);

}  // namespace nqd

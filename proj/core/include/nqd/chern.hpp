#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nqd/cdg.hpp"
#include "nqd/presentation.hpp"
#include "nqd/subspace.hpp"

namespace nqd {

/// C = B/[B,B] on degrees 0..max_degree with the projection T and the
/// operator delta_C induced by d. The commutator span in each degree is
/// spanned by supercommutators [w, b] with w a generator.
class TraceSpace {
 public:
  TraceSpace(const CdgAlgebra& psi, std::size_t max_degree);

  std::size_t max_degree() const { return max_; }
  std::size_t dim(std::size_t n) const { return n <= max_ ? quotient_[n].size() : 0; }
  /// [B,B]^n inside B^n.
  const Subspace& commutators(std::size_t n) const { return comm_.at(n); }
  /// Basis of C^n: images of these basis elements of B^n.
  const std::vector<std::size_t>& quotient_basis(std::size_t n) const { return quotient_.at(n); }

  Vector project(std::size_t n, std::span<const Scalar> x) const;
  /// Representative in B^n supported on quotient_basis(n).
  Vector lift(std::size_t n, std::span<const Scalar> c) const;
  /// delta_C : C^n -> C^{n+1}, dim C^{n+1} x dim C^n. Needs n < max_degree.
  const Matrix& delta(std::size_t n) const { return delta_.at(n); }
  /// Image of delta_C in C^n (zero for n = 0).
  const Subspace& coboundaries(std::size_t n) const { return bnd_.at(n); }
  /// Canonical representative of c modulo coboundaries.
  Vector reduce(std::size_t n, std::span<const Scalar> c) const;

 private:
  std::size_t max_;
  Field field_;
  std::vector<Subspace> comm_;
  std::vector<std::vector<std::size_t>> quotient_;
  std::vector<Matrix> delta_;
  std::vector<Subspace> bnd_;
};

/// f_* : C^n -> C'^n induced by the algebra map of a morphism.
Matrix induced_trace_map(const CdgMorphism& m, const TraceSpace& source, const TraceSpace& target, std::size_t n);

/// Throws CharacteristicGuard when the field has characteristic p with 2n >= p.
void check_characteristic(Field field, std::size_t n);

struct ChernForm {
  std::size_t n = 0;
  Vector form;            // c_n = T(h^n) in C^{2n}
  bool closed = false;    // delta_C c_n = 0
  bool h_power_closed = false;  // d(h^n) = 0 in B
  Vector representative;  // c_n reduced modulo delta_C C^{2n-1}
  bool zero_class = false;
};

ChernForm chern(const CdgAlgebra& psi, std::size_t n);
/// Same, reusing a trace space with max_degree >= 2n + 1.
ChernForm chern(const CdgAlgebra& psi, const TraceSpace& c, std::size_t n);

/// omega_n^(i) at alpha on the tangents xi_1..xi_i: the sum over all
/// arrangements of i tangent slots among n factors, the other factors being
/// h(alpha) = h + d alpha + alpha^2, alternated over the order of the tangents.
Vector omega(const CdgAlgebra& psi, std::size_t n, std::size_t i, std::span<const Scalar> point,
             const std::vector<Vector>& tangents);

struct TransgressionReport {
  std::size_t n = 0;
  std::size_t identities = 0;    // (i, tangent tuple) pairs compared
  std::size_t grid_points = 0;   // evaluation points per identity
  bool exhaustive_grid = false;  // full product grid {0..D}^v used
  bool ok = true;
  std::vector<std::string> failures;
};

/// Checks d omega^(i) = delta omega^(i+1) (i < n) and d omega^(n) = 0 as
/// polynomial identities in alpha on basis tangent tuples. Both sides are
/// expanded symbolically in the coordinates of alpha, compared coefficientwise
/// and evaluated on the grid {0..D}^v, or on max_points seeded grid points
/// when the full grid is larger.
TransgressionReport verify_transgression(const CdgAlgebra& psi, std::size_t n, std::size_t max_points = 4096,
                                         std::uint64_t seed = 1);

/// (delta_C : C^{2n-1}/delta_C C^{2n-2} -> C^{2n} cap ker delta_C ; c_n).
struct TwoTermObject {
  std::size_t n = 0;
  std::size_t c1_dim = 0;  // dim C^{2n-1} before the quotient
  Subspace c1_relations;   // delta_C C^{2n-2}
  Subspace c0;             // C^{2n} cap ker delta_C, inside C^{2n}
  Matrix delta;            // C^{2n-1} -> C^{2n}
  Vector c;
};

TwoTermObject cs_object(const CdgAlgebra& psi, std::size_t n);

struct TwoTermMorphism {
  Matrix f0;  // C^{2n} -> C'^{2n}
  Matrix f1;  // C^{2n-1} -> C'^{2n-1}
  Vector c1;  // canonical representative in C'^{2n-1} / delta' C'^{2n-2}
  Subspace c1_relations;
};

/// Does c' - f0(c) = delta' c1 hold, and do f0, f1 commute with the deltas?
bool satisfies_c2(const TwoTermObject& source, const TwoTermObject& target, const TwoTermMorphism& m);

/// (f_*, integral of omega_n^(1) over a path from 0 to alpha), omega taken for
/// the twist of the target by -alpha. The path is the straight segment unless
/// waypoints are given, in which case it is the polygon 0 -> waypoints -> alpha.
TwoTermMorphism cs_morphism(const CdgMorphism& m, std::size_t n, const std::vector<Vector>& waypoints = {});

/// (f o g, c1'' + f(c1')) for second o first.
TwoTermMorphism c2_compose(const TwoTermMorphism& second, const TwoTermMorphism& first);

bool same_c2_morphism(const TwoTermMorphism& a, const TwoTermMorphism& b);

struct CsClass {
  std::size_t n = 0;
  Vector chain;           // c_n^(1) in C_E^{2n-1}
  bool boundary_ok = false;  // delta c_n^(1) = -f_*(c_n)
  Subspace indeterminacy;    // T f(B^{2n-1}) + delta C_E^{2n-2}
  Vector representative;     // chain reduced modulo indeterminacy
  bool zero = false;
};

/// Chern-Simons class of a morphism into a DG-algebra. Throws
/// InvariantViolation when the target curvature is nonzero.
CsClass cs_class(const CdgMorphism& phi, std::size_t n);

/// dim F_n (U g / [U g, U g]) for n <= max_degree, computed from the
/// saturated relation ideal with the given slack.
std::vector<std::size_t> enveloping_trace_dims(const NQPresentation& enveloping, std::size_t max_degree,
                                               std::size_t slack);

}  // namespace nqd

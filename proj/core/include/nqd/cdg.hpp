#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nqd/graded_algebra.hpp"
#include "nqd/matrix.hpp"

namespace nqd {

/// Matrix (dim B^{n+k} x dim B^n) of the degree-k map given on generators and
/// extended by the graded Leibniz rule d(ab) = d(a)b + (-1)^{k|a|} a d(b).
/// For a quadratic base the relation space is checked first and NotADerivation
/// is thrown if it is not carried into the ideal.
Matrix extend_derivation(const GradedAlgebra& b, const std::vector<Vector>& on_generators, std::size_t n,
                         std::size_t k = 1);

/// Throws NotADerivation when a degree-k map on generators of a quadratic
/// algebra does not preserve its relations. No-op for other bases.
void check_derivation_relations(const GradedAlgebra& b, const std::vector<Vector>& on_generators,
                                std::size_t k = 1);

/// Curved DG-algebra (B, d, h): d is stored on generators, h lives in B^2.
class CdgAlgebra {
 public:
  CdgAlgebra(AlgebraPtr base, std::vector<Vector> d_on_generators, Vector curvature);

  const GradedAlgebra& base() const { return *base_; }
  const AlgebraPtr& base_ptr() const { return base_; }
  const std::vector<Vector>& d_on_generators() const { return d_gens_; }
  const Vector& curvature() const { return h_; }
  bool is_dg() const { return is_zero(h_); }

  /// d restricted to B^n, as a dim B^{n+1} x dim B^n matrix (cached).
  const Matrix& differential_matrix(std::size_t n) const;
  Vector differential(std::size_t n, std::span<const Scalar> x) const;
  /// The degree-one part d1 : B^1 -> B^2.
  const Matrix& d1() const { return differential_matrix(1); }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::size_t, std::unique_ptr<Matrix>> d;
  };
  AlgebraPtr base_;
  std::vector<Vector> d_gens_;
  Vector h_;
  std::shared_ptr<Cache> cache_;
};

/// Same base (by value for quadratic bases, by identity otherwise), same d and h.
bool same_cdg(const CdgAlgebra& a, const CdgAlgebra& b);
bool same_base(const GradedAlgebra& a, const GradedAlgebra& b);

struct Verdict {
  bool ok = true;
  std::string failure;                   // empty when ok
  std::optional<std::size_t> degree;     // degree of the first failing component
  Vector witness;                        // failing value, when one exists

  static Verdict pass() { return {}; }
  static Verdict fail(std::string why, std::size_t degree, Vector witness = {}) {
    return {false, std::move(why), degree, std::move(witness)};
  }
};

/// Checks the derivation property, d^2 = [h, .] and d(h) = 0 on components up to degree N.
Verdict verify_cdg(const CdgAlgebra& psi, std::size_t max_degree);

/// Leibniz rule on all basis pairs with total degree + 1 <= N.
Verdict verify_leibniz(const CdgAlgebra& psi, std::size_t max_degree);

/// Morphism (f, alpha) : source -> target; f is a graded algebra map stored on
/// the source generators, alpha lies in target^1.
class CdgMorphism {
 public:
  CdgMorphism(CdgAlgebra source, CdgAlgebra target, std::vector<Vector> generator_images, Vector alpha);

  static CdgMorphism identity(const CdgAlgebra& psi);

  const CdgAlgebra& source() const { return source_; }
  const CdgAlgebra& target() const { return target_; }
  const std::vector<Vector>& generator_images() const { return images_; }
  const Vector& alpha() const { return alpha_; }

  /// f on B^n (cached matrix).
  const Matrix& map_matrix(std::size_t n) const;
  Vector apply(std::size_t n, std::span<const Scalar> x) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::size_t, std::unique_ptr<Matrix>> f;
  };
  CdgAlgebra source_;
  CdgAlgebra target_;
  std::vector<Vector> images_;
  Vector alpha_;
  std::shared_ptr<Cache> cache_;
};

/// Matrix (dim B'^n x dim B^n) of the algebra map given on generators.
Matrix extend_algebra_map(const GradedAlgebra& source, const GradedAlgebra& target,
                          const std::vector<Vector>& images, std::size_t n);

/// Checks f respects relations, then d'f = f d + [alpha, f] and h' = f(h) + d'alpha - alpha^2.
Verdict verify_morphism(const CdgMorphism& m, std::size_t max_degree);

/// (f, alpha) o (g, beta) = (f o g, alpha + f(beta)); `second` is applied after `first`.
CdgMorphism compose(const CdgMorphism& second, const CdgMorphism& first);

/// Psi(alpha): d' = d + [alpha, .], h' = h + d alpha + alpha^2.
CdgAlgebra twist(const CdgAlgebra& psi, std::span<const Scalar> alpha);

/// The equivalence (id, alpha) : psi -> twist(psi, alpha).
CdgMorphism twist_morphism(const CdgAlgebra& psi, std::span<const Scalar> alpha);

/// Conjugation of a morphism by an invertible z in target^0:
/// g(x) = z f(x) z^{-1}, beta = z alpha z^{-1} + d'(z) z^{-1}.
CdgMorphism gauge(const CdgMorphism& m, std::span<const Scalar> z);

/// Two-sided inverse of z in B^0; throws InvariantViolation if z is not invertible.
Vector degree_zero_inverse(const GradedAlgebra& b, std::span<const Scalar> z);

bool same_morphism(const CdgMorphism& a, const CdgMorphism& b);

}  // namespace nqd

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nqd/matrix.hpp"
#include "nqd/scalar.hpp"

namespace nqd {

/// A homogeneous element chosen as an algebra generator.
struct Generator {
  std::size_t degree;
  Vector element;  // coordinates in the basis of that degree
  std::string name;
};

/// A nonnegatively graded associative algebra with a fixed basis in each
/// degree. Every basis element is a product of generators (basis_word), which
/// is how derivations and algebra maps given on generators are extended.
class GradedAlgebra {
 public:
  GradedAlgebra() = default;
  // Copies start with an empty product-table cache.
  GradedAlgebra(const GradedAlgebra&) {}
  GradedAlgebra& operator=(const GradedAlgebra&) { return *this; }
  virtual ~GradedAlgebra() = default;

  virtual Field field() const = 0;
  virtual std::size_t dim(std::size_t n) const = 0;
  /// Product of basis element a of degree i with basis element b of degree j.
  virtual SparseVector basis_product(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const = 0;
  virtual Vector unit() const = 0;
  virtual const std::vector<Generator>& generators() const = 0;
  /// Generator indices whose ordered product is basis element idx of degree n.
  virtual std::vector<std::size_t> basis_word(std::size_t n, std::size_t idx) const = 0;
  virtual std::string label(std::size_t n, std::size_t idx) const = 0;
  /// Degree above which the algebra vanishes, when known in advance.
  virtual std::optional<std::size_t> top_degree() const { return std::nullopt; }
  /// Same algebra with the same basis. Defaults to object identity.
  virtual bool same_as(const GradedAlgebra& other) const { return this == &other; }

  std::vector<std::string> labels(std::size_t n) const;
  Vector multiply(std::size_t i, std::span<const Scalar> x, std::size_t j, std::span<const Scalar> y) const;
  /// Supercommutator xy - (-1)^{ij} yx.
  Vector commutator(std::size_t i, std::span<const Scalar> x, std::size_t j, std::span<const Scalar> y) const;
  /// Cached table: entry a*dim(j)+b is the product of basis elements a and b.
  const std::vector<SparseVector>& product_table(std::size_t i, std::size_t j) const;
  /// Matrix of y -> x*y (side = left) or y -> y*x (right) from degree j.
  Matrix multiplication_matrix(std::size_t i, std::span<const Scalar> x, std::size_t j, bool left) const;
  Vector word_product(std::span<const std::size_t> word) const;
  std::size_t word_degree(std::span<const std::size_t> word) const;
  Vector power(std::size_t degree, std::span<const Scalar> x, std::size_t exponent) const;

 private:
  mutable std::mutex table_mutex_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<std::vector<SparseVector>>> tables_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// Element of a graded algebra with its degree attached.
struct Homogeneous {
  std::size_t degree = 0;
  Vector coords;
};

}  // namespace nqd

#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "nqd/graded_algebra.hpp"
#include "nqd/subspace.hpp"
#include "nqd/tensor.hpp"

namespace nqd {

/// Degree-n piece of T(V)/(I): its basis is the set of words that are not
/// pivots of the ideal component I_n.
struct GradedComponent {
  std::size_t degree = 0;
  std::size_t gen_dim = 0;
  Subspace ideal;                           // I_n inside V^n
  std::vector<std::size_t> normal_words;    // word indices, ascending
  std::vector<std::int64_t> position;       // word index -> coordinate, or -1

  std::size_t dim() const { return normal_words.size(); }
  /// Normal form of a single word.
  SparseVector project_word(std::size_t word) const;
  /// Normal form of a tensor in V^n.
  Vector project(const SparseVector& tensor) const;
  /// Tensor whose normal form is the given coordinate vector (supported on normal words).
  SparseVector lift(std::span<const Scalar> coords) const;
};

/// Quadratic algebra T(V)/(I) with I a subspace of V (x) V. Components are
/// computed lazily and shared between copies.
class QuadraticAlgebra : public GradedAlgebra {
 public:
  QuadraticAlgebra(std::vector<std::string> gen_names, Subspace relations, Field field = Field::rational());

  std::size_t gen_dim() const { return names_.size(); }
  const std::vector<std::string>& gen_names() const { return names_; }
  const Subspace& relations() const { return relations_; }
  const GradedComponent& component(std::size_t n) const;

  Field field() const override { return field_; }
  std::size_t dim(std::size_t n) const override { return component(n).dim(); }
  SparseVector basis_product(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const override;
  Vector unit() const override { return Vector{field_.one()}; }
  const std::vector<Generator>& generators() const override { return generators_; }
  std::vector<std::size_t> basis_word(std::size_t n, std::size_t idx) const override;
  std::string label(std::size_t n, std::size_t idx) const override;
  bool same_as(const GradedAlgebra& other) const override;

  friend bool operator==(const QuadraticAlgebra& a, const QuadraticAlgebra& b) {
    return a.gen_dim() == b.gen_dim() && a.relations_ == b.relations_;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::vector<std::unique_ptr<GradedComponent>> components;
  };

  std::vector<std::string> names_;
  Subspace relations_;
  Field field_;
  std::vector<Generator> generators_;
  std::shared_ptr<Cache> cache_;
};

/// Quadratic algebra on V* with relations I^perp under <v*(x)w*, v(x)w> = v*(v) w*(w).
/// Generator names get a trailing '*' (removed if already present).
QuadraticAlgebra quadratic_dual(const QuadraticAlgebra& a);

std::vector<std::size_t> hilbert(const GradedAlgebra& a, std::size_t max_degree);

/// dims[i][j] = dim Ext^i(k,k)_j for 0 <= i <= j <= N (zero elsewhere).
struct ExtTable {
  std::size_t max_degree = 0;
  std::vector<std::vector<std::size_t>> dims;
};

ExtTable ext_table(const GradedAlgebra& a, std::size_t max_degree);

struct KoszulVerdict {
  std::size_t max_degree = 0;
  bool koszul = true;                  // Ext concentrated on i = j in the window
  bool weak = true;                    // Ext^i_{i+1} = 0 for all i in the window
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (i, j) off the diagonal
  ExtTable table;
};

KoszulVerdict koszul_verdict(const GradedAlgebra& a, std::size_t max_degree);

/// Word label built from generator names; "1" for the empty word.
std::string word_label(const std::vector<std::string>& names, const Word& word);

}  // namespace nqd

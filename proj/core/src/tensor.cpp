#include "nqd/tensor.hpp"

#include <algorithm>
#include <limits>

#include "nqd/errors.hpp"

namespace nqd {

std::size_t ipow(std::size_t g, std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (g != 0 && r > std::numeric_limits<std::size_t>::max() / g)
      throw DimensionMismatch("tensor power too large");
    r *= g;
  }
  return r;
}

TensorBasis::TensorBasis(std::size_t gen_dim, std::size_t degree)
    : gen_dim_(gen_dim), degree_(degree), size_(ipow(gen_dim, degree)) {}

std::size_t word_index(std::span<const std::size_t> word, const TensorBasis& basis) {
  if (word.size() != basis.degree()) throw DimensionMismatch("word_index: word length differs from degree");
  std::size_t idx = 0;
  for (std::size_t w : word) {
    if (w >= basis.gen_dim()) throw DimensionMismatch("word_index: generator index out of range");
    idx = idx * basis.gen_dim() + w;
  }
  return idx;
}

Word index_word(std::size_t index, const TensorBasis& basis) {
  if (index >= basis.size()) throw DimensionMismatch("index_word: index out of range");
  Word w(basis.degree());
  for (std::size_t i = basis.degree(); i-- > 0;) {
    w[i] = index % basis.gen_dim();
    index /= basis.gen_dim();
  }
  return w;
}

FilteredTensorBasis::FilteredTensorBasis(std::size_t gen_dim, std::size_t bound)
    : gen_dim_(gen_dim), bound_(bound) {
  offsets_.push_back(0);
  for (std::size_t m = 0; m <= bound; ++m) offsets_.push_back(offsets_.back() + ipow(gen_dim, m));
}

std::size_t FilteredTensorBasis::degree_of(std::size_t index) const {
  if (index >= size()) throw DimensionMismatch("filtered index out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

std::vector<Subspace> homogeneous_ideal_components(const Subspace& relations, std::size_t gen_dim,
                                                   std::size_t max_degree) {
  const std::size_t g2 = gen_dim * gen_dim;
  if (relations.ambient_dim() != g2) throw DimensionMismatch("relations must live in V (x) V");
  std::vector<Subspace> out;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    const std::size_t size = ipow(gen_dim, n);
    if (n < 2) {
      out.emplace_back(size);
    } else if (n == 2) {
      out.push_back(relations);
    } else {
      std::vector<SparseVector> gens;
      const Subspace& prev = out.back();
      gens.reserve(prev.dim() * gen_dim + ipow(gen_dim, n - 2) * relations.dim());
      for (const auto& row : prev.rows())
        for (std::size_t v = 0; v < gen_dim; ++v) {
          SparseVector s;
          s.reserve(row.size());
          for (const auto& e : row) s.push_back({e.index * gen_dim + v, e.value});
          gens.push_back(std::move(s));
        }
      const std::size_t heads = ipow(gen_dim, n - 2);
      for (std::size_t u = 0; u < heads; ++u)
        for (const auto& row : relations.rows()) {
          SparseVector s;
          s.reserve(row.size());
          for (const auto& e : row) s.push_back({u * g2 + e.index, e.value});
          gens.push_back(std::move(s));
        }
      out.push_back(Subspace::span(size, gens));
    }
  }
  return out;
}

Subspace homogeneous_ideal_component(const Subspace& relations, std::size_t gen_dim, std::size_t n) {
  return homogeneous_ideal_components(relations, gen_dim, n).back();
}

SparseVector embed_filtered(const SparseVector& element, const FilteredTensorBasis& from,
                            const FilteredTensorBasis& to) {
  if (from.gen_dim() != to.gen_dim()) throw DimensionMismatch("embed_filtered: generator counts differ");
  if (from.bound() > to.bound()) throw DimensionMismatch("embed_filtered: target bound below source degree");
  for (const auto& e : element)
    if (e.index >= from.size()) throw DimensionMismatch("embed_filtered: index out of range");
  // Blocks are ascending, so T_m is a prefix of T_n.
  return element;
}

}  // namespace nqd

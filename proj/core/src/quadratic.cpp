#include "nqd/quadratic.hpp"

#include <algorithm>

#include "nqd/errors.hpp"

namespace nqd {

SparseVector GradedComponent::project_word(std::size_t word) const {
  const std::int64_t pos = position.at(word);
  if (pos >= 0) return {{static_cast<std::size_t>(pos), Scalar(1)}};
  // A pivot word equals minus the rest of its (fully reduced) ideal row.
  const std::int32_t r = ideal.pivot_row(word);
  SparseVector out;
  for (const auto& e : ideal.rows()[r]) {
    if (e.index == word) continue;
    out.push_back({static_cast<std::size_t>(position[e.index]), -e.value});
  }
  return out;
}

Vector GradedComponent::project(const SparseVector& tensor) const {
  Vector out(dim());
  for (const auto& t : tensor)
    for (const auto& e : project_word(t.index)) out[e.index] += t.value * e.value;
  return out;
}

SparseVector GradedComponent::lift(std::span<const Scalar> coords) const {
  if (coords.size() != dim()) throw DimensionMismatch("lift: coordinate length mismatch");
  SparseVector out;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero()) out.push_back({normal_words[i], coords[i]});
  return out;
}

std::string word_label(const std::vector<std::string>& names, const Word& word) {
  if (word.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) s += ".";
    s += names.at(word[i]);
  }
  return s;
}

QuadraticAlgebra::QuadraticAlgebra(std::vector<std::string> gen_names, Subspace relations, Field field)
    : names_(std::move(gen_names)), relations_(std::move(relations)), field_(field), cache_(std::make_shared<Cache>()) {
  const std::size_t g = names_.size();
  if (relations_.ambient_dim() != g * g) throw DimensionMismatch("relations must live in V (x) V");
  for (std::size_t i = 0; i < g; ++i) {
    Vector e(g);
    e[i] = field_.one();
    generators_.push_back({1, std::move(e), names_[i]});
  }
}

const GradedComponent& QuadraticAlgebra::component(std::size_t n) const {
  std::lock_guard lock(cache_->mutex);
  auto& comps = cache_->components;
  const std::size_t g = gen_dim();
  while (comps.size() <= n) {
    const std::size_t m = comps.size();
    auto c = std::make_unique<GradedComponent>();
    c->degree = m;
    c->gen_dim = g;
    const std::size_t size = ipow(g, m);
    if (m < 2) {
      c->ideal = Subspace(size);
    } else if (m == 2) {
      c->ideal = relations_;
    } else {
      // I_m = I_{m-1} (x) V + V^{m-2} (x) I.
      std::vector<SparseVector> gens;
      for (const auto& row : comps[m - 1]->ideal.rows())
        for (std::size_t v = 0; v < g; ++v) {
          SparseVector s;
          s.reserve(row.size());
          for (const auto& e : row) s.push_back({e.index * g + v, e.value});
          gens.push_back(std::move(s));
        }
      const std::size_t heads = ipow(g, m - 2);
      for (std::size_t u = 0; u < heads; ++u)
        for (const auto& row : relations_.rows()) {
          SparseVector s;
          s.reserve(row.size());
          for (const auto& e : row) s.push_back({u * g * g + e.index, e.value});
          gens.push_back(std::move(s));
        }
      c->ideal = Subspace::span(size, gens);
    }
    c->position.assign(size, -1);
    for (std::size_t w = 0; w < size; ++w)
      if (c->ideal.pivot_row(w) < 0) {
        c->position[w] = static_cast<std::int64_t>(c->normal_words.size());
        c->normal_words.push_back(w);
      }
    comps.push_back(std::move(c));
  }
  return *comps[n];
}

SparseVector QuadraticAlgebra::basis_product(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const {
  const std::size_t u = component(i).normal_words.at(a);
  const std::size_t w = component(j).normal_words.at(b);
  const GradedComponent& target = component(i + j);
  SparseVector out = target.project_word(concat_index(u, w, gen_dim(), j));
  for (auto& e : out) e.value = field_.coerce(e.value);
  return out;
}

std::vector<std::size_t> QuadraticAlgebra::basis_word(std::size_t n, std::size_t idx) const {
  return index_word(component(n).normal_words.at(idx), TensorBasis(gen_dim(), n));
}

std::string QuadraticAlgebra::label(std::size_t n, std::size_t idx) const {
  return word_label(names_, basis_word(n, idx));
}

bool QuadraticAlgebra::same_as(const GradedAlgebra& other) const {
  const auto* q = dynamic_cast<const QuadraticAlgebra*>(&other);
  return q != nullptr && q->field_ == field_ && *q == *this;
}

QuadraticAlgebra quadratic_dual(const QuadraticAlgebra& a) {
  std::vector<std::string> names;
  for (const auto& s : a.gen_names()) {
    if (!s.empty() && s.back() == '*')
      names.push_back(s.substr(0, s.size() - 1));
    else
      names.push_back(s + "*");
  }
  return QuadraticAlgebra(std::move(names), annihilator(a.relations()), a.field());
}

std::vector<std::size_t> hilbert(const GradedAlgebra& a, std::size_t max_degree) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= max_degree; ++n) out.push_back(a.dim(n));
  return out;
}

}  // namespace nqd

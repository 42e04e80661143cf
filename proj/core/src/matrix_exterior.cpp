#include "nqd/matrix_exterior.hpp"

#include <algorithm>

#include "nqd/errors.hpp"

namespace nqd {

namespace {

void collect_subsets(std::size_t m, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                     std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t s = start; s < m; ++s) {
    cur.push_back(s);
    collect_subsets(m, k, s + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

MatrixExteriorAlgebra::MatrixExteriorAlgebra(std::size_t rank, std::size_t exterior_dim, Field field)
    : r_(rank), m_(exterior_dim), field_(field) {
  if (r_ == 0) throw InvariantViolation("matrix rank must be positive");
  for (std::size_t k = 0; k <= m_; ++k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    collect_subsets(m_, k, 0, cur, out);
    subsets_.push_back(std::move(out));
  }
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < r_; ++j)
      gens_.push_back({0, unit_vector(dim(0), index(i, j, {})),
                       "E" + std::to_string(i + 1) + std::to_string(j + 1)});
  for (std::size_t a = 0; a < m_; ++a) {
    Vector e(dim(1));
    for (std::size_t i = 0; i < r_; ++i) e[index(i, i, {a})] = field_.one();
    gens_.push_back({1, std::move(e), "e" + std::to_string(a + 1)});
  }
  for (auto& g : gens_)
    for (auto& x : g.element) x = field_.coerce(x);
}

std::size_t MatrixExteriorAlgebra::dim(std::size_t n) const {
  return n > m_ ? 0 : r_ * r_ * subsets_[n].size();
}

std::size_t MatrixExteriorAlgebra::index(std::size_t i, std::size_t j, const std::vector<std::size_t>& subset) const {
  const auto& list = subsets_.at(subset.size());
  const auto it = std::lower_bound(list.begin(), list.end(), subset);
  if (it == list.end() || *it != subset) throw InvariantViolation("not a sorted subset");
  return (i * r_ + j) * list.size() + static_cast<std::size_t>(it - list.begin());
}

SparseVector MatrixExteriorAlgebra::basis_product(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const {
  if (i + j > m_) return {};
  const std::size_t ci = subsets_[i].size(), cj = subsets_[j].size();
  const std::size_t ra = a / ci, rb = b / cj;
  const std::size_t r1 = ra / r_, c1 = ra % r_, r2 = rb / r_, c2 = rb % r_;
  if (c1 != r2) return {};
  const auto& s = subsets_[i][a % ci];
  const auto& t = subsets_[j][b % cj];
  std::size_t inversions = 0;
  for (std::size_t x : s)
    for (std::size_t y : t) {
      if (x == y) return {};
      if (x > y) ++inversions;
    }
  std::vector<std::size_t> u(s);
  u.insert(u.end(), t.begin(), t.end());
  std::sort(u.begin(), u.end());
  return {{index(r1, c2, u), inversions % 2 ? -field_.one() : field_.one()}};
}

Vector MatrixExteriorAlgebra::unit() const {
  Vector u(dim(0), field_.zero());
  for (std::size_t i = 0; i < r_; ++i) u[index(i, i, {})] = field_.one();
  return u;
}

std::vector<std::size_t> MatrixExteriorAlgebra::basis_word(std::size_t n, std::size_t idx) const {
  const std::size_t c = subsets_.at(n).size();
  const std::size_t ij = idx / c;
  std::vector<std::size_t> w{ij};
  for (std::size_t s : subsets_[n][idx % c]) w.push_back(form_generator(s));
  return w;
}

std::string MatrixExteriorAlgebra::label(std::size_t n, std::size_t idx) const {
  std::string s;
  const auto w = basis_word(n, idx);
  if (r_ > 1) s = gens_[w[0]].name;
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (!s.empty()) s += ".";
    s += gens_[w[k]].name;
  }
  return s.empty() ? "1" : s;
}

bool MatrixExteriorAlgebra::same_as(const GradedAlgebra& other) const {
  const auto* o = dynamic_cast<const MatrixExteriorAlgebra*>(&other);
  return o != nullptr && o->r_ == r_ && o->m_ == m_ && o->field_ == field_;
}

CdgAlgebra matrix_connection(std::size_t rank, std::size_t exterior_dim, const Vector& alpha0,
                             const std::vector<Vector>& d0, Field field) {
  auto b = std::make_shared<MatrixExteriorAlgebra>(rank, exterior_dim, field);
  const std::size_t m = exterior_dim;
  if (d0.size() != m) throw DimensionMismatch("d0 needs one image per exterior generator");
  if (alpha0.size() != b->dim(1)) throw DimensionMismatch("alpha0 must lie in degree one");
  // Background differential on Lambda(m) alone, checked for d0^2 = 0.
  auto lambda = std::make_shared<MatrixExteriorAlgebra>(1, m, field);
  std::vector<Vector> lam_gens{Vector(lambda->dim(1), field.zero())};
  for (const auto& v : d0) {
    if (v.size() != lambda->dim(2)) throw DimensionMismatch("d0(e_a) must lie in Lambda^2");
    lam_gens.push_back(v);
  }
  const CdgAlgebra background(lambda, lam_gens, Vector(lambda->dim(2), field.zero()));
  if (m >= 1 && !(background.differential_matrix(2) * background.differential_matrix(1)).is_zero())
    throw InvariantViolation("background differential does not square to zero");

  // d0 on B: zero on matrices, d0(e_a) tensored with the identity.
  std::vector<Vector> d0_gens;
  for (std::size_t g = 0; g < rank * rank; ++g) d0_gens.push_back(Vector(b->dim(1), field.zero()));
  for (std::size_t a = 0; a < m; ++a) {
    Vector img(b->dim(2), field.zero());
    const auto& pairs = b->subsets(2);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      for (std::size_t i = 0; i < rank; ++i) img[b->index(i, i, pairs[k])] = field.coerce(d0[a][k]);
    d0_gens.push_back(std::move(img));
  }
  const CdgAlgebra flat(b, d0_gens, Vector(b->dim(2), field.zero()));
  std::vector<Vector> d_gens;
  for (std::size_t g = 0; g < b->generators().size(); ++g) {
    const Generator& gen = b->generators()[g];
    Vector v = d0_gens[g];
    axpy(v, field.one(), b->commutator(1, alpha0, gen.degree, gen.element));
    d_gens.push_back(std::move(v));
  }
  Vector h = flat.differential(1, alpha0);
  axpy(h, field.one(), b->multiply(1, alpha0, 1, alpha0));
  return CdgAlgebra(b, std::move(d_gens), std::move(h));
}

}  // namespace nqd

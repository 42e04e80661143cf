#include "nqd/duality.hpp"

#include <algorithm>
#include <map>

#include "nqd/errors.hpp"

namespace nqd {

namespace {

// P_N[j][k] = (row j of I)[k-th normal word of B^2].
Matrix pairing_matrix(const QuadraticAlgebra& b, const Subspace& i) {
  const auto& normal = b.component(2).normal_words;
  if (normal.size() != i.dim()) throw DimensionMismatch("B^2 and I have different dimensions");
  Matrix m(i.dim(), normal.size());
  for (std::size_t j = 0; j < i.dim(); ++j)
    for (std::size_t k = 0; k < normal.size(); ++k) m.at(j, k) = b.field().coerce(sparse_at(i.rows()[j], normal[k]));
  return m;
}

std::vector<std::string> toggle_names(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& s : names) out.push_back(!s.empty() && s.back() == '*' ? s.substr(0, s.size() - 1) : s + "*");
  return out;
}

}  // namespace

Vector functional_to_b2(const QuadraticAlgebra& b, const Subspace& i, std::span<const Scalar> lambda) {
  return solve(pairing_matrix(b, i), lambda);
}

Vector b2_to_functional(const QuadraticAlgebra& b, const Subspace& i, std::span<const Scalar> element) {
  return pairing_matrix(b, i).apply(element);
}

CdgAlgebra dualize(const NQPresentation& p, bool validate) {
  auto base = std::make_shared<QuadraticAlgebra>(quadratic_dual(p.underlying()));
  const Subspace& i = p.quadratic_part();
  const Matrix pn = pairing_matrix(*base, i);
  const Matrix pn_inv = inverse(pn);
  std::vector<Vector> d_gens;
  for (std::size_t a = 0; a < p.gen_dim(); ++a) d_gens.push_back(pn_inv.apply(p.phi().column(a)));
  Vector h = pn_inv.apply(p.h());
  CdgAlgebra psi(base, std::move(d_gens), std::move(h));
  if (validate) {
    const Verdict v = verify_cdg(psi, 3);
    if (!v.ok) throw NotADerivation("relations are not closed under the nonhomogeneous structure: " + v.failure);
  }
  return psi;
}

NQPresentation reconstruct(const CdgAlgebra& psi) {
  const auto* b = dynamic_cast<const QuadraticAlgebra*>(&psi.base());
  if (b == nullptr) throw InvariantViolation("reconstruct needs a quadratic base algebra");
  for (const auto& g : b->generators())
    if (g.degree != 1) throw InvariantViolation("reconstruct needs generators in degree one");
  Subspace i = annihilator(b->relations());
  const Matrix pn = pairing_matrix(*b, i);
  const std::size_t g = b->gen_dim();
  Matrix phi(i.dim(), g);
  for (std::size_t a = 0; a < g; ++a) {
    const Vector col = pn.apply(psi.d_on_generators()[a]);
    for (std::size_t j = 0; j < i.dim(); ++j) phi.at(j, a) = col[j];
  }
  Vector h = pn.apply(psi.curvature());
  std::optional<Vector> eps;
  if (is_zero(h)) eps = Vector(g, b->field().zero());
  return NQPresentation(toggle_names(b->gen_names()), std::move(i), std::move(phi), std::move(h), b->field(),
                        std::move(eps));
}

SparseVector apply_presentation_map(const PresentationMap& f, const SparseVector& x, std::size_t gen_dim,
                                    std::size_t target_gen_dim, std::size_t bound) {
  if (f.linear.rows() != target_gen_dim || f.linear.cols() != gen_dim || f.shift.size() != gen_dim)
    throw DimensionMismatch("presentation map has the wrong shape");
  const FilteredTensorBasis from(gen_dim, bound);
  const FilteredTensorBasis to(target_gen_dim, bound);
  Vector out(to.size());
  for (const auto& e : x) {
    const std::size_t deg = from.degree_of(e.index);
    const Word w = index_word(e.index - from.offset(deg), TensorBasis(gen_dim, deg));
    // (degree, local index) -> coefficient of the partial product.
    std::map<std::pair<std::size_t, std::size_t>, Scalar> acc{{{0, 0}, e.value}};
    for (std::size_t a : w) {
      std::map<std::pair<std::size_t, std::size_t>, Scalar> next;
      for (const auto& [key, c] : acc) {
        if (!f.shift[a].is_zero()) next[key] += c * f.shift[a];
        for (std::size_t b = 0; b < target_gen_dim; ++b)
          if (!f.linear.at(b, a).is_zero()) next[{key.first + 1, key.second * target_gen_dim + b}] += c * f.linear.at(b, a);
      }
      acc = std::move(next);
    }
    for (const auto& [key, c] : acc) out[to.offset(key.first) + key.second] += c;
  }
  return to_sparse(out);
}

CdgMorphism dualize_presentation_morphism(const NQPresentation& source, const NQPresentation& target,
                                          const PresentationMap& f) {
  const std::size_t g = source.gen_dim();
  const std::size_t gt = target.gen_dim();
  const Subspace jt = j2_subspace(target);
  const Subspace js = j2_subspace(source);
  for (const auto& row : js.rows())
    if (!jt.contains(apply_presentation_map(f, row, g, gt, 2)))
      throw NotAMorphism("generator map does not carry J_2 into J'_2");
  CdgAlgebra from = dualize(target);
  CdgAlgebra to = dualize(source);
  std::vector<Vector> images;
  for (std::size_t b = 0; b < gt; ++b) {
    Vector img(g);
    for (std::size_t a = 0; a < g; ++a) img[a] = f.linear.at(b, a);
    images.push_back(std::move(img));
  }
  return CdgMorphism(std::move(from), std::move(to), std::move(images), scaled(f.shift, Scalar(-1)));
}

std::optional<Vector> complement_shift(std::size_t gen_dim, const std::vector<SparseVector>& complement) {
  // Columns (v_1..v_g, 1): leftmost pivots then sit on V exactly when the span is a graph.
  std::vector<SparseVector> moved;
  for (const auto& r : complement) {
    SparseVector v;
    for (const auto& e : r) {
      if (e.index > gen_dim) throw DimensionMismatch("complement vector outside k + V");
      v.push_back({e.index == 0 ? gen_dim : e.index - 1, e.value});
    }
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    moved.push_back(std::move(v));
  }
  const Subspace s = Subspace::span(gen_dim + 1, moved);
  if (s.dim() != gen_dim) return std::nullopt;
  Vector alpha(gen_dim);
  for (std::size_t a = 0; a < gen_dim; ++a) {
    if (s.pivots()[a] != a) return std::nullopt;
    alpha[a] = sparse_at(s.rows()[a], gen_dim);
  }
  return alpha;
}

}  // namespace nqd

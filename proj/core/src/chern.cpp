#include "nqd/chern.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "nqd/errors.hpp"
#include "nqd/presentation.hpp"
#include "nqd/tensor.hpp"

namespace nqd {

namespace {

// Polynomial in the coordinates t_a of alpha in B^1 with coefficients in B^degree.
using Monomial = std::vector<std::uint16_t>;

struct Poly {
  std::size_t degree = 0;
  std::map<Monomial, Vector> terms;
};

void accumulate(Poly& p, const Monomial& m, const Vector& c) {
  if (is_zero(c)) return;
  auto [it, fresh] = p.terms.try_emplace(m, c);
  if (!fresh) {
    axpy(it->second, Scalar(1), c);
    if (is_zero(it->second)) p.terms.erase(it);
  }
}

Poly constant(std::size_t degree, const Vector& c) {
  Poly p{degree, {}};
  accumulate(p, {}, c);
  return p;
}

Monomial merge(const Monomial& a, const Monomial& b) {
  Monomial m;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

Poly multiply(const GradedAlgebra& b, const Poly& x, const Poly& y) {
  Poly out{x.degree + y.degree, {}};
  if (b.dim(out.degree) == 0) return out;
  for (const auto& [mx, cx] : x.terms)
    for (const auto& [my, cy] : y.terms) accumulate(out, merge(mx, my), b.multiply(x.degree, cx, y.degree, cy));
  return out;
}

void add_scaled(Poly& into, const Poly& x, const Scalar& s) {
  for (const auto& [m, c] : x.terms) accumulate(into, m, scaled(c, s));
}

Poly derivative(const Poly& x, std::uint16_t a) {
  Poly out{x.degree, {}};
  for (const auto& [m, c] : x.terms) {
    const auto k = std::count(m.begin(), m.end(), a);
    if (k == 0) continue;
    Monomial rest = m;
    rest.erase(std::find(rest.begin(), rest.end(), a));
    accumulate(out, rest, scaled(c, Scalar(static_cast<std::int64_t>(k))));
  }
  return out;
}

// delta(alpha) x = d x + [alpha, x] with alpha = sum t_a e_a.
Poly apply_delta(const CdgAlgebra& psi, const Poly& x) {
  const GradedAlgebra& b = psi.base();
  Poly out{x.degree + 1, {}};
  if (b.dim(out.degree) == 0) return out;
  const std::size_t v = b.dim(1);
  for (const auto& [m, c] : x.terms) {
    accumulate(out, m, psi.differential(x.degree, c));
    for (std::size_t a = 0; a < v; ++a) {
      const Vector e = unit_vector(v, a);
      accumulate(out, merge(m, {static_cast<std::uint16_t>(a)}), b.commutator(1, e, x.degree, c));
    }
  }
  return out;
}

Poly h_poly(const CdgAlgebra& psi) {
  const GradedAlgebra& b = psi.base();
  const std::size_t v = b.dim(1);
  Poly h = constant(2, psi.curvature());
  for (std::size_t a = 0; a < v; ++a) {
    const Vector ea = unit_vector(v, a);
    accumulate(h, {static_cast<std::uint16_t>(a)}, psi.differential(1, ea));
    for (std::size_t c = 0; c < v; ++c)
      accumulate(h, merge({static_cast<std::uint16_t>(a)}, {static_cast<std::uint16_t>(c)}),
                 b.multiply(1, ea, 1, unit_vector(v, c)));
  }
  return h;
}

Vector evaluate(const Poly& x, std::size_t dim, std::span<const Scalar> point) {
  Vector out(dim);
  for (const auto& [m, c] : x.terms) {
    Scalar w(1);
    for (auto a : m) w = w * point[a];
    if (!w.is_zero()) axpy(out, w, c);
  }
  return out;
}

int permutation_sign(const std::vector<std::size_t>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

// Sum over arrangements of the factors: the tangents fill i of n slots in
// order, h fills the rest; alternated over the order of the tangents.
Poly omega_poly(const CdgAlgebra& psi, const Poly& h, std::size_t n, const std::vector<std::size_t>& tuple) {
  const GradedAlgebra& b = psi.base();
  const std::size_t i = tuple.size();
  Poly total{2 * n - i, {}};
  if (b.dim(total.degree) == 0) return total;
  std::vector<std::size_t> perm(i);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const int sign = permutation_sign(perm);
    std::vector<bool> slot(n, false);
    std::fill(slot.begin(), slot.begin() + static_cast<std::ptrdiff_t>(i), true);
    std::sort(slot.begin(), slot.end());
    do {
      Poly prod = constant(0, b.unit());
      std::size_t k = 0;
      for (std::size_t j = 0; j < n; ++j)
        prod = multiply(b, prod, slot[j] ? constant(1, unit_vector(b.dim(1), tuple[perm[k++]])) : h);
      add_scaled(total, prod, Scalar(sign));
    } while (std::next_permutation(slot.begin(), slot.end()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Polynomial in one variable t with coefficients in B^degree.
struct TPoly {
  std::size_t degree = 0;
  std::vector<Vector> coeffs;
};

TPoly tmul(const GradedAlgebra& b, const TPoly& x, const TPoly& y) {
  TPoly out{x.degree + y.degree, {}};
  const std::size_t dim = b.dim(out.degree);
  if (x.coeffs.empty() || y.coeffs.empty()) return out;
  out.coeffs.assign(x.coeffs.size() + y.coeffs.size() - 1, Vector(dim));
  if (dim == 0) return out;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i)
    for (std::size_t j = 0; j < y.coeffs.size(); ++j)
      axpy(out.coeffs[i + j], Scalar(1), b.multiply(x.degree, x.coeffs[i], y.degree, y.coeffs[j]));
  return out;
}

// Integral over t in [0, 1] of omega_n^(1) at p + t v on the tangent v, for psi.
Vector segment_integral(const CdgAlgebra& psi, std::size_t n, const Vector& p, const Vector& v) {
  const GradedAlgebra& b = psi.base();
  const Vector pp = b.multiply(1, p, 1, p);
  Vector h0 = add(psi.curvature(), psi.differential(1, p));
  axpy(h0, Scalar(1), pp);
  Vector h1 = psi.differential(1, v);
  axpy(h1, Scalar(1), b.multiply(1, p, 1, v));
  axpy(h1, Scalar(1), b.multiply(1, v, 1, p));
  const TPoly h{2, {h0, h1, b.multiply(1, v, 1, v)}};
  const TPoly tangent{1, {v}};
  const TPoly unit{0, {b.unit()}};
  TPoly sum{2 * n - 1, std::vector<Vector>(2 * n - 1, Vector(b.dim(2 * n - 1)))};
  for (std::size_t j = 0; j < n; ++j) {
    TPoly prod = unit;
    for (std::size_t k = 0; k < n; ++k) prod = tmul(b, prod, k == j ? tangent : h);
    if (sum.coeffs.size() < prod.coeffs.size()) sum.coeffs.resize(prod.coeffs.size(), Vector(b.dim(2 * n - 1)));
    for (std::size_t k = 0; k < prod.coeffs.size(); ++k) axpy(sum.coeffs[k], Scalar(1), prod.coeffs[k]);
  }
  Vector out(b.dim(2 * n - 1));
  for (std::size_t k = 0; k < sum.coeffs.size(); ++k)
    axpy(out, Scalar(1) / Scalar(static_cast<std::int64_t>(k + 1)), sum.coeffs[k]);
  return out;
}

Vector cs_chain(const CdgMorphism& m, std::size_t n, const std::vector<Vector>& waypoints) {
  const CdgAlgebra shifted = twist(m.target(), scaled(m.alpha(), Scalar(-1)));
  std::vector<Vector> points{Vector(m.alpha().size())};
  points.insert(points.end(), waypoints.begin(), waypoints.end());
  points.push_back(m.alpha());
  Vector chain(m.target().base().dim(2 * n - 1));
  for (std::size_t s = 0; s + 1 < points.size(); ++s)
    axpy(chain, Scalar(1), segment_integral(shifted, n, points[s], sub(points[s + 1], points[s])));
  return chain;
}

}  // namespace

TraceSpace::TraceSpace(const CdgAlgebra& psi, std::size_t max_degree) : max_(max_degree) {
  const GradedAlgebra& b = psi.base();
  field_ = b.field();
  for (std::size_t n = 0; n <= max_; ++n) {
    std::vector<SparseVector> gens;
    for (const auto& g : b.generators()) {
      if (g.degree > n) continue;
      for (std::size_t j = 0; j < b.dim(n - g.degree); ++j)
        gens.push_back(to_sparse(b.commutator(g.degree, g.element, n - g.degree, unit_vector(b.dim(n - g.degree), j))));
    }
    comm_.push_back(Subspace::span(b.dim(n), gens));
    quotient_.push_back(comm_.back().non_pivots());
  }
  for (std::size_t n = 0; n < max_; ++n) {
    Matrix d(dim(n + 1), dim(n));
    for (std::size_t j = 0; j < dim(n); ++j) {
      const Vector img = project(n + 1, psi.differential(n, unit_vector(b.dim(n), quotient_[n][j])));
      for (std::size_t i = 0; i < img.size(); ++i) d.at(i, j) = img[i];
    }
    delta_.push_back(std::move(d));
  }
  bnd_.push_back(Subspace(dim(0)));
  for (std::size_t n = 1; n <= max_; ++n) bnd_.push_back(Subspace::span(delta_[n - 1].transpose()));
}

Vector TraceSpace::project(std::size_t n, std::span<const Scalar> x) const {
  const Vector r = to_dense(comm_.at(n).reduce(to_sparse(x)), x.size());
  Vector out;
  out.reserve(quotient_[n].size());
  for (auto j : quotient_[n]) out.push_back(r[j]);
  return out;
}

Vector TraceSpace::lift(std::size_t n, std::span<const Scalar> c) const {
  Vector out(comm_.at(n).ambient_dim());
  for (std::size_t j = 0; j < c.size(); ++j) out[quotient_[n][j]] = c[j];
  return out;
}

Vector TraceSpace::reduce(std::size_t n, std::span<const Scalar> c) const {
  return to_dense(bnd_.at(n).reduce(to_sparse(c)), c.size());
}

Matrix induced_trace_map(const CdgMorphism& m, const TraceSpace& source, const TraceSpace& target, std::size_t n) {
  Matrix out(target.dim(n), source.dim(n));
  for (std::size_t j = 0; j < source.dim(n); ++j) {
    const Vector img = target.project(n, m.apply(n, source.lift(n, unit_vector(source.dim(n), j))));
    for (std::size_t i = 0; i < img.size(); ++i) out.at(i, j) = img[i];
  }
  return out;
}

void check_characteristic(Field field, std::size_t n) {
  if (!field.is_rational() && 2 * n >= field.characteristic())
    throw CharacteristicGuard("characteristic classes need 2n < p; got n = " + std::to_string(n) +
                              " over " + field.name());
}

ChernForm chern(const CdgAlgebra& psi, std::size_t n) {
  check_characteristic(psi.base().field(), n);
  return chern(psi, TraceSpace(psi, 2 * n + 1), n);
}

ChernForm chern(const CdgAlgebra& psi, const TraceSpace& c, std::size_t n) {
  check_characteristic(psi.base().field(), n);
  if (c.max_degree() < 2 * n + 1) throw DimensionMismatch("trace space window too small for c_n");
  const GradedAlgebra& b = psi.base();
  ChernForm out;
  out.n = n;
  const Vector hn = n == 0 ? b.unit() : b.power(2, psi.curvature(), n);
  out.form = c.project(2 * n, hn);
  out.closed = is_zero(c.delta(2 * n).apply(out.form));
  out.h_power_closed = is_zero(psi.differential(2 * n, hn));
  out.representative = c.reduce(2 * n, out.form);
  out.zero_class = is_zero(out.representative);
  return out;
}

Vector omega(const CdgAlgebra& psi, std::size_t n, std::size_t i, std::span<const Scalar> point,
             const std::vector<Vector>& tangents) {
  if (i > n) throw InvariantViolation("omega_n^(i) needs i <= n");
  if (tangents.size() != i) throw DimensionMismatch("omega_n^(i) takes i tangents");
  const GradedAlgebra& b = psi.base();
  Vector h = add(psi.curvature(), psi.differential(1, point));
  axpy(h, Scalar(1), b.multiply(1, point, 1, point));
  Vector total(b.dim(2 * n - i));
  std::vector<std::size_t> perm(i);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const int sign = permutation_sign(perm);
    std::vector<bool> slot(n, false);
    std::fill(slot.begin(), slot.begin() + static_cast<std::ptrdiff_t>(i), true);
    std::sort(slot.begin(), slot.end());
    do {
      Vector prod = b.unit();
      std::size_t deg = 0, k = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const bool t = slot[j];
        prod = b.multiply(deg, prod, t ? 1 : 2, t ? tangents[perm[k++]] : h);
        deg += t ? 1 : 2;
      }
      axpy(total, Scalar(sign), prod);
    } while (std::next_permutation(slot.begin(), slot.end()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

TransgressionReport verify_transgression(const CdgAlgebra& psi, std::size_t n, std::size_t max_points,
                                         std::uint64_t seed) {
  if (n == 0) throw InvariantViolation("transgression needs n >= 1");
  const GradedAlgebra& b = psi.base();
  const std::size_t v = b.dim(1);
  const Poly h = h_poly(psi);
  TransgressionReport rep;
  rep.n = n;

  std::map<std::vector<std::size_t>, Poly> cache;
  auto omega_of = [&](const std::vector<std::size_t>& tuple) -> const Poly& {
    auto it = cache.find(tuple);
    if (it == cache.end()) it = cache.emplace(tuple, omega_poly(psi, h, n, tuple)).first;
    return it->second;
  };

  // Grid for degree D = 2n in each coordinate of alpha.
  const std::size_t D = 2 * n;
  std::vector<Vector> grid;
  double full = 1;
  for (std::size_t a = 0; a < v; ++a) full *= static_cast<double>(D + 1);
  if (full <= static_cast<double>(max_points)) {
    rep.exhaustive_grid = true;
    Vector pt(v);
    std::vector<std::size_t> digits(v, 0);
    while (true) {
      for (std::size_t a = 0; a < v; ++a) pt[a] = Scalar(static_cast<std::int64_t>(digits[a]));
      grid.push_back(pt);
      std::size_t a = 0;
      while (a < v && ++digits[a] > D) digits[a++] = 0;
      if (a == v) break;
    }
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < max_points; ++s) {
      Vector pt(v);
      for (auto& x : pt) x = Scalar(static_cast<std::int64_t>(rng() % (D + 1)));
      grid.push_back(pt);
    }
  }
  rep.grid_points = grid.size();

  for (std::size_t i = 0; i <= n; ++i) {
    const std::size_t out_degree = 2 * n - i;
    if (i + 1 > v) break;
    std::vector<bool> pick(v, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(i + 1), true);
    do {
      std::vector<std::size_t> tuple;
      for (std::size_t a = 0; a < v; ++a)
        if (pick[a]) tuple.push_back(a);
      Poly lhs{out_degree, {}};
      for (std::size_t j = 0; j <= i; ++j) {
        std::vector<std::size_t> rest = tuple;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
        add_scaled(lhs, derivative(omega_of(rest), static_cast<std::uint16_t>(tuple[j])), Scalar(j % 2 ? -1 : 1));
      }
      Poly rhs{out_degree, {}};
      if (i < n) rhs = apply_delta(psi, omega_of(tuple));
      ++rep.identities;
      Poly diff = lhs;
      add_scaled(diff, rhs, Scalar(-1));
      bool ok = diff.terms.empty();
      for (const auto& pt : grid) {
        if (!ok) break;
        ok = evaluate(lhs, b.dim(out_degree), pt) == evaluate(rhs, b.dim(out_degree), pt);
      }
      if (!ok) {
        rep.ok = false;
        std::string t;
        for (auto a : tuple) t += (t.empty() ? "" : ",") + std::to_string(a);
        rep.failures.push_back("i = " + std::to_string(i) + " on tangents (" + t + ")");
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return rep;
}

TwoTermObject cs_object(const CdgAlgebra& psi, std::size_t n) {
  if (n == 0) throw InvariantViolation("cs_object needs n >= 1");
  const TraceSpace c(psi, 2 * n + 1);
  TwoTermObject out;
  out.n = n;
  out.c1_dim = c.dim(2 * n - 1);
  out.c1_relations = c.coboundaries(2 * n - 1);
  out.c0 = kernel(c.delta(2 * n));
  out.delta = c.delta(2 * n - 1);
  out.c = chern(psi, c, n).form;
  return out;
}

bool satisfies_c2(const TwoTermObject& source, const TwoTermObject& target, const TwoTermMorphism& m) {
  if (!(target.delta * m.f1 == m.f0 * source.delta)) return false;
  const Vector lhs = sub(target.c, m.f0.apply(source.c));
  return lhs == target.delta.apply(m.c1);
}

TwoTermMorphism cs_morphism(const CdgMorphism& m, std::size_t n, const std::vector<Vector>& waypoints) {
  if (n == 0) throw InvariantViolation("cs_morphism needs n >= 1");
  check_characteristic(m.target().base().field(), n);
  const TraceSpace src(m.source(), 2 * n + 1), tgt(m.target(), 2 * n + 1);
  TwoTermMorphism out;
  out.f0 = induced_trace_map(m, src, tgt, 2 * n);
  out.f1 = induced_trace_map(m, src, tgt, 2 * n - 1);
  out.c1_relations = tgt.coboundaries(2 * n - 1);
  out.c1 = tgt.reduce(2 * n - 1, tgt.project(2 * n - 1, cs_chain(m, n, waypoints)));
  return out;
}

TwoTermMorphism c2_compose(const TwoTermMorphism& second, const TwoTermMorphism& first) {
  if (second.f0.cols() != first.f0.rows() || second.f1.cols() != first.f1.rows())
    throw DimensionMismatch("c2_compose: morphisms are not composable");
  TwoTermMorphism out;
  out.f0 = second.f0 * first.f0;
  out.f1 = second.f1 * first.f1;
  out.c1_relations = second.c1_relations;
  const Vector c = add(second.c1, second.f1.apply(first.c1));
  out.c1 = to_dense(out.c1_relations.reduce(to_sparse(c)), c.size());
  return out;
}

bool same_c2_morphism(const TwoTermMorphism& a, const TwoTermMorphism& b) {
  return a.f0 == b.f0 && a.f1 == b.f1 && a.c1 == b.c1 && a.c1_relations == b.c1_relations;
}

CsClass cs_class(const CdgMorphism& phi, std::size_t n) {
  if (!phi.target().is_dg()) throw InvariantViolation("cs_class needs a DG target (h' = 0)");
  if (n == 0) throw InvariantViolation("cs_class needs n >= 1");
  check_characteristic(phi.target().base().field(), n);
  const TraceSpace src(phi.source(), 2 * n + 1), tgt(phi.target(), 2 * n + 1);
  CsClass out;
  out.n = n;
  out.chain = tgt.project(2 * n - 1, cs_chain(phi, n, {}));
  const Vector cn = chern(phi.source(), src, n).form;
  const Vector pushed = induced_trace_map(phi, src, tgt, 2 * n).apply(cn);
  out.boundary_ok = add(tgt.delta(2 * n - 1).apply(out.chain), pushed) == Vector(pushed.size());
  std::vector<SparseVector> gens = tgt.coboundaries(2 * n - 1).rows();
  const std::size_t k = phi.source().base().dim(2 * n - 1);
  for (std::size_t j = 0; j < k; ++j)
    gens.push_back(to_sparse(tgt.project(2 * n - 1, phi.apply(2 * n - 1, unit_vector(k, j)))));
  out.indeterminacy = Subspace::span(tgt.dim(2 * n - 1), gens);
  out.representative = to_dense(out.indeterminacy.reduce(to_sparse(out.chain)), out.chain.size());
  out.zero = is_zero(out.representative);
  return out;
}

std::vector<std::size_t> enveloping_trace_dims(const NQPresentation& p, std::size_t max_degree, std::size_t slack) {
  const std::size_t g = p.gen_dim();
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    const FilteredTensorBasis fb(g, n + 1);
    const SaturationResult sat = saturate(p, n + 1, slack);
    EchelonBasis e(fb.size(), LeadOrder::Highest);
    for (const auto& r : sat.space.rows()) e.insert(r);
    for (std::size_t len = 0; len <= n; ++len) {
      const TensorBasis words(g, len), longer(g, len + 1);
      for (std::size_t w = 0; w < words.size(); ++w) {
        const Word word = index_word(w, words);
        for (std::size_t a = 0; a < g; ++a) {
          Word left{a}, right = word;
          left.insert(left.end(), word.begin(), word.end());
          right.push_back(a);
          const std::size_t i = fb.index(len + 1, word_index(left, longer));
          const std::size_t j = fb.index(len + 1, word_index(right, longer));
          if (i == j) continue;
          SparseVector c{{std::min(i, j), Scalar(i < j ? 1 : -1)}, {std::max(i, j), Scalar(i < j ? -1 : 1)}};
          e.insert(c);
        }
      }
    }
    const std::size_t prefix = fb.offset(n + 1);
    std::size_t inside = 0;
    for (std::size_t r = 0; r < e.rank(); ++r)
      if (e.lead(r) < prefix) ++inside;
    out.push_back(prefix - inside);
  }
  return out;
}

}  // namespace nqd

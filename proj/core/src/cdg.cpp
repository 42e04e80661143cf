#include "nqd/cdg.hpp"

#include "nqd/errors.hpp"
#include "nqd/quadratic.hpp"
#include "nqd/subspace.hpp"

namespace nqd {

namespace {

// D(g_1...g_s) = sum_t (-1)^{k deg(g_1..g_{t-1})} g_1..D(g_t)..g_s.
Vector derivation_on_word(const GradedAlgebra& b, const std::vector<Vector>& on_gens,
                          const std::vector<std::size_t>& word, std::size_t k) {
  const auto& gens = b.generators();
  const std::size_t s = word.size();
  std::vector<Vector> prefix(s + 1);
  std::vector<std::size_t> prefix_deg(s + 1, 0);
  prefix[0] = b.unit();
  for (std::size_t t = 0; t < s; ++t) {
    const Generator& g = gens[word[t]];
    prefix[t + 1] = b.multiply(prefix_deg[t], prefix[t], g.degree, g.element);
    prefix_deg[t + 1] = prefix_deg[t] + g.degree;
  }
  std::vector<Vector> suffix(s + 1);
  std::vector<std::size_t> suffix_deg(s + 1, 0);
  suffix[s] = b.unit();
  for (std::size_t t = s; t-- > 0;) {
    const Generator& g = gens[word[t]];
    suffix[t] = b.multiply(g.degree, g.element, suffix_deg[t + 1], suffix[t + 1]);
    suffix_deg[t] = suffix_deg[t + 1] + g.degree;
  }
  Vector out(b.dim(prefix_deg[s] + k));
  for (std::size_t t = 0; t < s; ++t) {
    const Generator& g = gens[word[t]];
    Vector left = b.multiply(prefix_deg[t], prefix[t], g.degree + k, on_gens[word[t]]);
    Vector term = b.multiply(prefix_deg[t] + g.degree + k, left, suffix_deg[t + 1], suffix[t + 1]);
    axpy(out, (k * prefix_deg[t]) % 2 ? Scalar(-1) : Scalar(1), term);
  }
  return out;
}

void check_images(const GradedAlgebra& b, const std::vector<Vector>& on_gens, std::size_t k, const char* what) {
  const auto& gens = b.generators();
  if (on_gens.size() != gens.size()) throw DimensionMismatch(std::string(what) + ": one image per generator required");
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (on_gens[g].size() != b.dim(gens[g].degree + k))
      throw DimensionMismatch(std::string(what) + ": image of generator " + gens[g].name + " has wrong length");
}

Matrix derivation_matrix(const GradedAlgebra& b, const std::vector<Vector>& on_gens, std::size_t n, std::size_t k) {
  const std::size_t src = b.dim(n);
  Matrix m(b.dim(n + k), src);
  for (std::size_t idx = 0; idx < src; ++idx) {
    Vector col = derivation_on_word(b, on_gens, b.basis_word(n, idx), k);
    for (std::size_t r = 0; r < col.size(); ++r) m.at(r, idx) = col[r];
  }
  return m;
}

Vector bracket(const GradedAlgebra& b, std::size_t i, std::span<const Scalar> x, std::size_t j,
               std::span<const Scalar> y) {
  return b.commutator(i, x, j, y);
}

}  // namespace

void check_derivation_relations(const GradedAlgebra& b, const std::vector<Vector>& on_gens, std::size_t k) {
  check_images(b, on_gens, k, "derivation");
  const auto* q = dynamic_cast<const QuadraticAlgebra*>(&b);
  if (q == nullptr) return;
  const std::size_t g = q->gen_dim();
  const auto& gens = q->generators();
  for (const auto& row : q->relations().rows()) {
    Vector acc(q->dim(2 + k));
    for (const auto& e : row) {
      const std::size_t a = e.index / g, c = e.index % g;
      Vector t1 = q->multiply(1 + k, on_gens[a], 1, gens[c].element);
      Vector t2 = q->multiply(1, gens[a].element, 1 + k, on_gens[c]);
      axpy(acc, e.value, t1);
      axpy(acc, k % 2 ? -e.value : e.value, t2);
    }
    if (!is_zero(acc))
      throw NotADerivation("the map on generators does not preserve the relation space (value " + to_string(acc) +
                           " in degree " + std::to_string(2 + k) + ")");
  }
}

Matrix extend_derivation(const GradedAlgebra& b, const std::vector<Vector>& on_gens, std::size_t n, std::size_t k) {
  check_derivation_relations(b, on_gens, k);
  return derivation_matrix(b, on_gens, n, k);
}

CdgAlgebra::CdgAlgebra(AlgebraPtr base, std::vector<Vector> d_on_generators, Vector curvature)
    : base_(std::move(base)), d_gens_(std::move(d_on_generators)), h_(std::move(curvature)),
      cache_(std::make_shared<Cache>()) {
  if (!base_) throw InvariantViolation("CDG-algebra needs a base algebra");
  check_images(*base_, d_gens_, 1, "differential");
  if (h_.size() != base_->dim(2)) throw DimensionMismatch("curvature must lie in B^2");
}

const Matrix& CdgAlgebra::differential_matrix(std::size_t n) const {
  std::lock_guard lock(cache_->mutex);
  auto& slot = cache_->d[n];
  if (!slot) slot = std::make_unique<Matrix>(derivation_matrix(*base_, d_gens_, n, 1));
  return *slot;
}

Vector CdgAlgebra::differential(std::size_t n, std::span<const Scalar> x) const {
  return differential_matrix(n).apply(x);
}

bool same_base(const GradedAlgebra& a, const GradedAlgebra& b) { return a.same_as(b); }

bool same_cdg(const CdgAlgebra& a, const CdgAlgebra& b) {
  return same_base(a.base(), b.base()) && a.d_on_generators() == b.d_on_generators() &&
         a.curvature() == b.curvature();
}

Verdict verify_leibniz(const CdgAlgebra& psi, std::size_t max_degree) {
  const GradedAlgebra& b = psi.base();
  for (std::size_t total = 0; total + 1 <= max_degree; ++total)
    for (std::size_t i = 0; i <= total; ++i) {
      const std::size_t j = total - i;
      const std::size_t di = b.dim(i), dj = b.dim(j);
      for (std::size_t a = 0; a < di; ++a)
        for (std::size_t c = 0; c < dj; ++c) {
          Vector x = unit_vector(di, a), y = unit_vector(dj, c);
          Vector lhs = psi.differential(total, b.multiply(i, x, j, y));
          axpy(lhs, -1, b.multiply(i + 1, psi.differential(i, x), j, y));
          axpy(lhs, i % 2 ? Scalar(1) : Scalar(-1), b.multiply(i, x, j + 1, psi.differential(j, y)));
          if (!is_zero(lhs))
            return Verdict::fail("Leibniz rule fails on " + b.label(i, a) + " * " + b.label(j, c), total + 1, lhs);
        }
    }
  return Verdict::pass();
}

Verdict verify_cdg(const CdgAlgebra& psi, std::size_t max_degree) {
  const GradedAlgebra& b = psi.base();
  try {
    check_derivation_relations(b, psi.d_on_generators(), 1);
  } catch (const NotADerivation& e) {
    return Verdict::fail(e.what(), 3);
  }
  if (Verdict v = verify_leibniz(psi, max_degree); !v.ok) return v;
  const Vector& h = psi.curvature();
  for (std::size_t n = 0; n + 2 <= max_degree; ++n) {
    const std::size_t dn = b.dim(n);
    for (std::size_t a = 0; a < dn; ++a) {
      Vector x = unit_vector(dn, a);
      Vector dd = psi.differential(n + 1, psi.differential(n, x));
      axpy(dd, -1, bracket(b, 2, h, n, x));
      if (!is_zero(dd)) return Verdict::fail("d^2 != [h, .] on " + b.label(n, a), n + 2, dd);
    }
  }
  if (max_degree >= 3) {
    Vector dh = psi.differential(2, h);
    if (!is_zero(dh)) return Verdict::fail("d(h) != 0", 3, dh);
  }
  return Verdict::pass();
}

Matrix extend_algebra_map(const GradedAlgebra& source, const GradedAlgebra& target,
                          const std::vector<Vector>& images, std::size_t n) {
  const auto& gens = source.generators();
  Matrix m(target.dim(n), source.dim(n));
  for (std::size_t idx = 0; idx < source.dim(n); ++idx) {
    Vector acc = target.unit();
    std::size_t deg = 0;
    for (std::size_t g : source.basis_word(n, idx)) {
      acc = target.multiply(deg, acc, gens[g].degree, images[g]);
      deg += gens[g].degree;
    }
    for (std::size_t r = 0; r < acc.size(); ++r) m.at(r, idx) = acc[r];
  }
  return m;
}

CdgMorphism::CdgMorphism(CdgAlgebra source, CdgAlgebra target, std::vector<Vector> generator_images, Vector alpha)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(generator_images)),
      alpha_(std::move(alpha)), cache_(std::make_shared<Cache>()) {
  const auto& gens = source_.base().generators();
  if (images_.size() != gens.size()) throw DimensionMismatch("morphism: one image per source generator required");
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (images_[g].size() != target_.base().dim(gens[g].degree))
      throw DimensionMismatch("morphism: image of generator " + gens[g].name + " has wrong length");
  if (alpha_.size() != target_.base().dim(1)) throw DimensionMismatch("morphism: alpha must lie in target^1");
}

CdgMorphism CdgMorphism::identity(const CdgAlgebra& psi) {
  std::vector<Vector> images;
  for (const auto& g : psi.base().generators()) images.push_back(g.element);
  return CdgMorphism(psi, psi, std::move(images), Vector(psi.base().dim(1)));
}

const Matrix& CdgMorphism::map_matrix(std::size_t n) const {
  std::lock_guard lock(cache_->mutex);
  auto& slot = cache_->f[n];
  if (!slot) slot = std::make_unique<Matrix>(extend_algebra_map(source_.base(), target_.base(), images_, n));
  return *slot;
}

Vector CdgMorphism::apply(std::size_t n, std::span<const Scalar> x) const { return map_matrix(n).apply(x); }

Verdict verify_morphism(const CdgMorphism& m, std::size_t max_degree) {
  const GradedAlgebra& b = m.source().base();
  const GradedAlgebra& t = m.target().base();
  if (const auto* q = dynamic_cast<const QuadraticAlgebra*>(&b)) {
    const std::size_t g = q->gen_dim();
    for (const auto& row : q->relations().rows()) {
      Vector acc(t.dim(2));
      for (const auto& e : row)
        axpy(acc, e.value, t.multiply(1, m.generator_images()[e.index / g], 1, m.generator_images()[e.index % g]));
      if (!is_zero(acc)) return Verdict::fail("generator map does not preserve the relations", 2, acc);
    }
  }
  for (std::size_t total = 0; total <= max_degree; ++total)
    for (std::size_t i = 0; i <= total; ++i) {
      const std::size_t j = total - i;
      for (std::size_t a = 0; a < b.dim(i); ++a)
        for (std::size_t c = 0; c < b.dim(j); ++c) {
          Vector x = unit_vector(b.dim(i), a), y = unit_vector(b.dim(j), c);
          Vector lhs = m.apply(total, b.multiply(i, x, j, y));
          axpy(lhs, -1, t.multiply(i, m.apply(i, x), j, m.apply(j, y)));
          if (!is_zero(lhs))
            return Verdict::fail("map is not multiplicative on " + b.label(i, a) + " * " + b.label(j, c), total, lhs);
        }
    }
  const Vector& alpha = m.alpha();
  for (std::size_t n = 0; n + 1 <= max_degree; ++n)
    for (std::size_t a = 0; a < b.dim(n); ++a) {
      Vector x = unit_vector(b.dim(n), a);
      Vector fx = m.apply(n, x);
      Vector lhs = m.target().differential(n, fx);
      axpy(lhs, -1, m.apply(n + 1, m.source().differential(n, x)));
      axpy(lhs, -1, t.commutator(1, alpha, n, fx));
      if (!is_zero(lhs)) return Verdict::fail("d'f != f d + [alpha, f] on " + b.label(n, a), n + 1, lhs);
    }
  if (max_degree >= 2) {
    Vector rhs = m.apply(2, m.source().curvature());
    axpy(rhs, 1, m.target().differential(1, alpha));
    axpy(rhs, -1, t.multiply(1, alpha, 1, alpha));
    Vector diff = sub(m.target().curvature(), rhs);
    if (!is_zero(diff)) return Verdict::fail("h' != f(h) + d'alpha - alpha^2", 2, diff);
  }
  return Verdict::pass();
}

CdgMorphism compose(const CdgMorphism& second, const CdgMorphism& first) {
  if (!same_cdg(first.target(), second.source()))
    throw DimensionMismatch("compose: target of the first morphism differs from source of the second");
  const auto& gens = first.source().base().generators();
  std::vector<Vector> images;
  for (std::size_t g = 0; g < gens.size(); ++g)
    images.push_back(second.apply(gens[g].degree, first.generator_images()[g]));
  Vector alpha = add(second.alpha(), second.apply(1, first.alpha()));
  return CdgMorphism(first.source(), second.target(), std::move(images), std::move(alpha));
}

CdgAlgebra twist(const CdgAlgebra& psi, std::span<const Scalar> alpha) {
  const GradedAlgebra& b = psi.base();
  if (alpha.size() != b.dim(1)) throw DimensionMismatch("twist: alpha must lie in B^1");
  const auto& gens = b.generators();
  std::vector<Vector> d;
  for (std::size_t g = 0; g < gens.size(); ++g)
    d.push_back(add(psi.d_on_generators()[g], b.commutator(1, alpha, gens[g].degree, gens[g].element)));
  Vector h = add(psi.curvature(), psi.differential(1, alpha));
  axpy(h, 1, b.multiply(1, alpha, 1, alpha));
  return CdgAlgebra(psi.base_ptr(), std::move(d), std::move(h));
}

CdgMorphism twist_morphism(const CdgAlgebra& psi, std::span<const Scalar> alpha) {
  CdgAlgebra target = twist(psi, alpha);
  std::vector<Vector> images;
  for (const auto& g : psi.base().generators()) images.push_back(g.element);
  return CdgMorphism(psi, std::move(target), std::move(images), Vector(alpha.begin(), alpha.end()));
}

Vector degree_zero_inverse(const GradedAlgebra& b, std::span<const Scalar> z) {
  const std::size_t n = b.dim(0);
  if (z.size() != n) throw DimensionMismatch("gauge element must lie in degree 0");
  Matrix left = b.multiplication_matrix(0, z, 0, true);
  auto w = solve_any(left, b.unit());
  if (!w) throw InvariantViolation("gauge element is not invertible");
  if (b.multiply(0, *w, 0, z) != b.unit()) throw InvariantViolation("gauge element has no two-sided inverse");
  return *w;
}

CdgMorphism gauge(const CdgMorphism& m, std::span<const Scalar> z) {
  const GradedAlgebra& t = m.target().base();
  Vector zinv = degree_zero_inverse(t, z);
  const auto& gens = m.source().base().generators();
  std::vector<Vector> images;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::size_t deg = gens[g].degree;
    Vector left = t.multiply(0, z, deg, m.generator_images()[g]);
    images.push_back(t.multiply(deg, left, 0, zinv));
  }
  Vector beta = t.multiply(1, t.multiply(0, z, 1, m.alpha()), 0, zinv);
  axpy(beta, 1, t.multiply(1, m.target().differential(0, z), 0, zinv));
  return CdgMorphism(m.source(), m.target(), std::move(images), std::move(beta));
}

bool same_morphism(const CdgMorphism& a, const CdgMorphism& b) {
  return same_cdg(a.source(), b.source()) && same_cdg(a.target(), b.target()) &&
         a.generator_images() == b.generator_images() && a.alpha() == b.alpha();
}

}  // namespace nqd

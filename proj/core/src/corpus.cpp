#include "nqd/corpus.hpp"

#include <random>

#include "nqd/errors.hpp"
#include "nqd/quadratic.hpp"

namespace nqd {

LieData::LieData(std::vector<std::string> names, std::vector<std::vector<Vector>> brackets, Field field)
    : names_(std::move(names)), c_(std::move(brackets)), field_(field) {
  const std::size_t n = names_.size();
  if (c_.size() != n) throw DimensionMismatch("bracket table needs dim rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i].size() != n) throw DimensionMismatch("bracket table needs dim columns");
    for (std::size_t j = 0; j < n; ++j) {
      if (c_[i][j].size() != n) throw DimensionMismatch("bracket values must lie in g");
      for (auto& x : c_[i][j]) x = field_.coerce(x);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!is_zero(add(c_[i][j], c_[j][i])))
        throw InvariantViolation("bracket is not antisymmetric at (" + names_[i] + ", " + names_[j] + ")");
}

LieData LieData::abelian(std::vector<std::string> names, Field field) {
  const std::size_t n = names.size();
  std::vector<std::vector<Vector>> c(n, std::vector<Vector>(n, Vector(n, field.zero())));
  return LieData(std::move(names), std::move(c), field);
}

LieData& LieData::set_bracket(std::size_t i, std::size_t j, Vector value) {
  if (value.size() != dim()) throw DimensionMismatch("bracket value must lie in g");
  if (i == j && !is_zero(value)) throw InvariantViolation("[x, x] must vanish");
  for (auto& x : value) x = field_.coerce(x);
  c_[j][i] = scaled(value, Scalar(-1));
  c_[i][j] = std::move(value);
  return *this;
}

LieData heisenberg3(Field field) {
  LieData g = LieData::abelian({"x", "y", "z"}, field);
  g.set_bracket(0, 1, {0, 0, 1});
  return g;
}

LieData sl2(Field field) {
  LieData g = LieData::abelian({"e", "f", "h"}, field);
  g.set_bracket(0, 1, {0, 0, 1});
  g.set_bracket(2, 0, {2, 0, 0});
  g.set_bracket(2, 1, {0, -2, 0});
  return g;
}

namespace {

NQPresentation lie_presentation(const LieData& g, const Matrix* omega) {
  const std::size_t n = g.dim();
  const FilteredTensorBasis fb(n, 2);
  std::vector<SparseVector> rels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector r(fb.size(), g.field().zero());
      r[fb.offset(2) + i * n + j] += 1;
      r[fb.offset(2) + j * n + i] -= 1;
      for (std::size_t k = 0; k < n; ++k) r[fb.offset(1) + k] -= g.bracket(i, j)[k];
      if (omega) r[0] -= omega->at(i, j);
      rels.push_back(to_sparse(r));
    }
  std::optional<Vector> eps;
  if (!omega) eps = Vector(n, g.field().zero());
  return NQPresentation::from_relations(g.names(), rels, g.field(), std::move(eps));
}

}  // namespace

bool lie_jacobi_holds(const LieData& g) {
  try {
    return verify_cdg(dualize(enveloping(g), false), 3).ok;
  } catch (const NotADerivation&) {
    return false;
  }
}

NQPresentation enveloping(const LieData& g) { return lie_presentation(g, nullptr); }

NQPresentation central_extension(const LieData& g, const Matrix& omega) {
  const std::size_t n = g.dim();
  if (omega.rows() != n || omega.cols() != n) throw DimensionMismatch("cocycle must be dim x dim");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(omega.at(i, j) + omega.at(j, i)).is_zero()) throw InvariantViolation("cocycle is not antisymmetric");
  auto w = [&](const Vector& u, std::size_t k) {
    Scalar s;
    for (std::size_t a = 0; a < n; ++a) s += u[a] * omega.at(a, k);
    return s;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Scalar c = w(g.bracket(i, j), k) + w(g.bracket(j, k), i) + w(g.bracket(k, i), j);
        if (!g.field().coerce(c).is_zero())
          throw InvariantViolation("not a 2-cocycle on (" + g.names()[i] + ", " + g.names()[j] + ", " +
                                   g.names()[k] + ")");
      }
  return lie_presentation(g, &omega);
}

NQPresentation clifford(std::vector<std::string> names, const Matrix& q, Field field) {
  const std::size_t n = names.size();
  if (q.rows() != n || q.cols() != n) throw DimensionMismatch("quadratic form must be dim x dim");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(q.at(i, j) - q.at(j, i)).is_zero()) throw InvariantViolation("quadratic form is not symmetric");
  const FilteredTensorBasis fb(n, 2);
  std::vector<SparseVector> rels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vector r(fb.size(), field.zero());
      r[fb.offset(2) + i * n + j] += 1;
      r[fb.offset(2) + j * n + i] += 1;
      r[0] -= q.at(i, j);
      rels.push_back(to_sparse(r));
    }
  return NQPresentation::from_relations(std::move(names), rels, field);
}

NQPresentation clifford_linear(std::vector<std::string> names, const Vector& lambda, Field field) {
  const std::size_t n = names.size();
  if (lambda.size() != n) throw DimensionMismatch("lambda needs one value per generator");
  if (field.characteristic() == 2) throw InvariantViolation("characteristic 2 is not supported here");
  const Scalar half = field.one() / field.from_int(2);
  // Clifford form Q = lambda (x) lambda / 2 moved to the complement v + lambda(v)/2.
  Matrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q.at(i, j) = lambda[i] * lambda[j] * half;
  const NQPresentation c = clifford(names, q, field);
  const NQPresentation shifted = change_complement(c, scaled(lambda, half));
  return NQPresentation(shifted.gen_names(), shifted.quadratic_part(), shifted.phi(), shifted.h(), field,
                        Vector(n, field.zero()));
}

NQPresentation weyl() {
  Matrix omega(2, 2);
  omega.at(0, 1) = 1;
  omega.at(1, 0) = -1;
  return central_extension(LieData::abelian({"x", "y"}), omega);
}

NQPresentation heisenberg_extension() {
  Matrix omega(3, 3);
  omega.at(0, 1) = 1;
  omega.at(1, 0) = -1;
  return central_extension(heisenberg3(), omega);
}

NQPresentation pbw_counterexample() {
  const std::size_t n = 3;
  const FilteredTensorBasis fb(n, 2);
  Vector r1(fb.size()), r2(fb.size());
  r1[fb.offset(2) + 0 * n + 1] = 1;  // x.y
  r1[fb.offset(1) + 0] = -1;
  r1[fb.offset(1) + 1] = -1;
  r2[fb.offset(2) + 0 * n + 0] = 1;  // x.x
  r2[fb.offset(2) + 1 * n + 2] = 1;  // y.z
  r2[fb.offset(1) + 2] = -1;
  return NQPresentation::from_relations({"x", "y", "z"}, {to_sparse(r1), to_sparse(r2)});
}

NQPresentation cobar_presentation(const AugmentedAlgebra& a) {
  const std::size_t r = a.names.size();
  const Field f = a.field;
  if (a.mult.size() != r) throw DimensionMismatch("multiplication table needs r rows");
  for (const auto& row : a.mult) {
    if (row.size() != r) throw DimensionMismatch("multiplication table needs r columns");
    for (const auto& v : row)
      if (v.size() != r) throw DimensionMismatch("products must lie in A_+");
  }
  auto prod = [&](const Vector& x, std::size_t j) {
    Vector out(r, f.zero());
    for (std::size_t i = 0; i < r; ++i)
      if (!x[i].is_zero()) axpy(out, x[i], a.mult[i][j]);
    return out;
  };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        // (a_i a_j) a_k against a_i (a_j a_k)
        Vector left = prod(a.mult[i][j], k);
        Vector right(r, f.zero());
        for (std::size_t l = 0; l < r; ++l)
          if (!a.mult[j][k][l].is_zero()) axpy(right, a.mult[j][k][l], a.mult[i][l]);
        Vector diff = sub(left, right);
        for (auto& x : diff) x = f.coerce(x);
        if (!is_zero(diff))
          throw InvariantViolation("multiplication is not associative on (" + a.names[i] + ", " + a.names[j] + ", " +
                                   a.names[k] + ")");
      }
  const FilteredTensorBasis fb(r, 2);
  std::vector<SparseVector> rels;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Vector v(fb.size(), f.zero());
      v[fb.offset(2) + i * r + j] = 1;
      for (std::size_t k = 0; k < r; ++k) v[fb.offset(1) + k] = -a.mult[i][j][k];
      rels.push_back(to_sparse(v));
    }
  return NQPresentation::from_relations(a.names, rels, f, Vector(r, f.zero()));
}

CdgAlgebra cobar_of(const AugmentedAlgebra& a) { return dualize(cobar_presentation(a)); }

std::vector<std::size_t> dg_cohomology_dims(const CdgAlgebra& psi, std::size_t max_degree) {
  if (!psi.is_dg()) throw InvariantViolation("cohomology needs h = 0");
  std::vector<std::size_t> out;
  std::size_t prev_rank = 0;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    const std::size_t dn = psi.base().dim(n);
    const std::size_t rk = dn == 0 ? 0 : rank(psi.differential_matrix(n));
    out.push_back(dn - rk - prev_rank);
    prev_rank = rk;
  }
  return out;
}

namespace {

Scalar small_int(std::mt19937_64& rng, int radius) {
  return Scalar(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * radius + 1)) - radius);
}

bool is_quadratic_base(const GradedAlgebra& b) { return dynamic_cast<const QuadraticAlgebra*>(&b) != nullptr; }

}  // namespace

Vector random_degree_one(const GradedAlgebra& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vector v(b.dim(1));
  for (auto& x : v) x = b.field().coerce(small_int(rng, 2));
  return v;
}

CdgAlgebra matrix_connection_fixture(std::uint64_t seed, Field field) {
  const std::size_t r = 2, m = 3;
  std::vector<Vector> d0(m, Vector(3, field.zero()));
  d0[2][0] = field.one();  // d0(e3) = e1 e2
  std::mt19937_64 rng(seed);
  Vector alpha0(r * r * m);
  for (auto& x : alpha0) x = field.coerce(small_int(rng, 2));
  return matrix_connection(r, m, alpha0, d0, field);
}

CdgMorphism pushforward(const CdgAlgebra& psi, const std::vector<Vector>& images,
                        const std::vector<Vector>& inverse_images) {
  const GradedAlgebra& b = psi.base();
  const auto& gens = b.generators();
  if (images.size() != gens.size() || inverse_images.size() != gens.size())
    throw DimensionMismatch("pushforward needs one image per generator");
  std::vector<Vector> d_gens;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::size_t k = gens[g].degree;
    const Vector d = psi.differential(k, inverse_images[g]);
    d_gens.push_back(extend_algebra_map(b, b, images, k + 1).apply(d));
  }
  Vector h = extend_algebra_map(b, b, images, 2).apply(psi.curvature());
  CdgAlgebra target(psi.base_ptr(), std::move(d_gens), std::move(h));
  return CdgMorphism(psi, std::move(target), images, Vector(b.dim(1), b.field().zero()));
}

namespace {

// Random invertible change of the degree-one generators, identity on degree zero.
std::pair<std::vector<Vector>, std::vector<Vector>> random_linear_change(const GradedAlgebra& b, std::mt19937_64& rng) {
  const auto& gens = b.generators();
  std::vector<std::size_t> odd;
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (gens[g].degree == 1) odd.push_back(g);
  const std::size_t k = odd.size();
  const Field f = b.field();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m.at(i, j) = f.coerce(small_int(rng, 1) + (i == j ? Scalar(1) : Scalar(0)));
    if (rank(m) != k) continue;
    const Matrix inv = inverse(m);
    std::vector<Vector> images, inverse_images;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      images.push_back(gens[g].element);
      inverse_images.push_back(gens[g].element);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Vector img(b.dim(1), f.zero()), iimg(b.dim(1), f.zero());
      for (std::size_t i = 0; i < k; ++i) {
        axpy(img, m.at(i, j), gens[odd[i]].element);
        axpy(iimg, inv.at(i, j), gens[odd[i]].element);
      }
      images[odd[j]] = std::move(img);
      inverse_images[odd[j]] = std::move(iimg);
    }
    if (is_quadratic_base(b)) {
      // The change must preserve the relations.
      const auto& q = dynamic_cast<const QuadraticAlgebra&>(b);
      bool ok = true;
      for (const auto& row : q.relations().rows()) {
        Vector img(q.relations().ambient_dim(), f.zero());
        const std::size_t n = q.gen_dim();
        for (const auto& e : row)
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = 0; c < n; ++c) img[a * n + c] += e.value * m.at(a, e.index / n) * m.at(c, e.index % n);
        if (!q.relations().contains(to_sparse(img))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
    }
    return {std::move(images), std::move(inverse_images)};
  }
  std::vector<Vector> id;
  for (const auto& g : gens) id.push_back(g.element);
  return {id, id};
}

}  // namespace

std::pair<CdgMorphism, CdgMorphism> random_morphism_pair(const CdgAlgebra& psi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto [f1, f1_inv] = random_linear_change(psi.base(), rng);
  CdgMorphism m1 = pushforward(psi, f1, f1_inv);
  const Vector alpha = random_degree_one(psi.base(), rng());
  CdgMorphism t = twist_morphism(m1.target(), alpha);
  auto [f2, f2_inv] = random_linear_change(psi.base(), rng);
  CdgMorphism p2 = pushforward(t.target(), f2, f2_inv);
  return {std::move(m1), compose(p2, t)};
}

}  // namespace nqd

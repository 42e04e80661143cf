#include "nqd/presentation.hpp"

#include <algorithm>

#include "nqd/echelon.hpp"
#include "nqd/errors.hpp"

namespace nqd {

NQPresentation::NQPresentation(std::vector<std::string> gen_names, Subspace quadratic, Matrix phi, Vector h,
                               Field field, std::optional<Vector> augmentation)
    : names_(std::move(gen_names)), quadratic_(std::move(quadratic)), phi_(std::move(phi)), h_(std::move(h)),
      field_(field), augmentation_(std::move(augmentation)) {
  const std::size_t g = names_.size();
  if (quadratic_.ambient_dim() != g * g) throw DimensionMismatch("quadratic part must live in V (x) V");
  if (phi_.rows() != quadratic_.dim() || phi_.cols() != g) throw DimensionMismatch("phi must be dim I x dim V");
  if (h_.size() != quadratic_.dim()) throw DimensionMismatch("h must have one value per basis element of I");
  if (augmentation_ && augmentation_->size() != g) throw DimensionMismatch("augmentation needs one value per generator");
}

NQPresentation NQPresentation::from_relations(std::vector<std::string> gen_names,
                                              const std::vector<SparseVector>& relations, Field field,
                                              std::optional<Vector> augmentation) {
  const std::size_t g = gen_names.size();
  const std::size_t g2 = g * g;
  const FilteredTensorBasis fb(g, 2);
  // Reorder to (V (x) V, V, k) so that leftmost pivots land in the quadratic block.
  auto reorder = [&](std::size_t i) {
    if (i >= fb.offset(2)) return i - fb.offset(2);
    if (i >= fb.offset(1)) return g2 + (i - fb.offset(1));
    return g2 + g;
  };
  std::vector<SparseVector> moved;
  for (const auto& r : relations) {
    SparseVector v;
    for (const auto& e : r) {
      if (e.index >= fb.size()) throw DimensionMismatch("relation index out of range");
      v.push_back({reorder(e.index), field.coerce(e.value)});
    }
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    moved.push_back(std::move(v));
  }
  Subspace j = Subspace::span(g2 + g + 1, moved);
  std::vector<SparseVector> quad;
  Matrix phi(j.dim(), g);
  Vector h(j.dim(), field.zero());
  for (std::size_t r = 0; r < j.dim(); ++r) {
    if (j.pivots()[r] >= g2) throw InvariantViolation("relations intersect k + V: the relation space is not a graph over I");
    SparseVector q;
    for (const auto& e : j.rows()[r]) {
      if (e.index < g2)
        q.push_back(e);
      else if (e.index < g2 + g)
        phi.at(r, e.index - g2) = e.value;
      else
        h[r] = e.value;
    }
    quad.push_back(std::move(q));
  }
  Subspace i = Subspace::span(g2, quad);
  return NQPresentation(std::move(gen_names), std::move(i), std::move(phi), std::move(h), field,
                        std::move(augmentation));
}

Vector NQPresentation::coordinates(const SparseVector& p) const {
  if (!quadratic_.contains(p)) throw InvariantViolation("element does not lie in I");
  Vector c(quadratic_.dim(), field_.zero());
  for (std::size_t r = 0; r < quadratic_.dim(); ++r) c[r] = sparse_at(p, quadratic_.pivots()[r]);
  return c;
}

Vector NQPresentation::phi_of(const SparseVector& p) const {
  const Vector c = coordinates(p);
  Vector out(gen_dim(), field_.zero());
  for (std::size_t r = 0; r < c.size(); ++r) axpy(out, c[r], phi_.row(r));
  return out;
}

Scalar NQPresentation::h_of(const SparseVector& p) const { return dot(coordinates(p), h_); }

QuadraticAlgebra NQPresentation::underlying() const { return QuadraticAlgebra(names_, quadratic_, field_); }

bool operator==(const NQPresentation& a, const NQPresentation& b) {
  return a.gen_dim() == b.gen_dim() && a.quadratic_part() == b.quadratic_part() && a.phi() == b.phi() &&
         a.h() == b.h();
}

namespace {

std::vector<SparseVector> j2_rows(const NQPresentation& p) {
  const std::size_t g = p.gen_dim();
  const FilteredTensorBasis fb(g, 2);
  std::vector<SparseVector> rows;
  for (std::size_t r = 0; r < p.quadratic_part().dim(); ++r) {
    SparseVector v;
    if (!p.h()[r].is_zero()) v.push_back({0, p.h()[r]});
    for (std::size_t c = 0; c < g; ++c)
      if (!p.phi().at(r, c).is_zero()) v.push_back({fb.offset(1) + c, p.phi().at(r, c)});
    for (const auto& e : p.quadratic_part().rows()[r]) v.push_back({fb.offset(2) + e.index, e.value});
    rows.push_back(std::move(v));
  }
  return rows;
}

}  // namespace

Subspace j2_subspace(const NQPresentation& p) {
  return Subspace::span(FilteredTensorBasis(p.gen_dim(), 2).size(), j2_rows(p));
}

bool SaturationTower::stabilized(std::size_t n) const {
  if (homogeneous) return true;
  if (slack == 0) return false;
  const auto& d = dims.at(n);
  const std::size_t span = std::min<std::size_t>(2, slack);
  for (std::size_t s = slack - span; s < slack; ++s)
    if (d[s] != d[slack]) return false;
  return true;
}

SaturationTower saturate_all(const NQPresentation& p, std::size_t max_degree, std::size_t slack) {
  const std::size_t g = p.gen_dim();
  const std::size_t top = max_degree + slack;
  const FilteredTensorBasis fb(g, top);
  SaturationTower tower;
  tower.max_degree = max_degree;
  tower.slack = slack;
  tower.homogeneous = p.is_homogeneous();
  tower.dims.assign(max_degree + 1, std::vector<std::size_t>(slack + 1, 0));

  // q's terms as (degree, local word index, coefficient).
  struct Term {
    std::size_t degree, local;
    Scalar value;
  };
  std::vector<std::vector<Term>> gens;
  const FilteredTensorBasis fb2(g, 2);
  for (const auto& row : j2_rows(p)) {
    std::vector<Term> ts;
    for (const auto& e : row) {
      const std::size_t deg = fb2.degree_of(e.index);
      ts.push_back({deg, e.index - fb2.offset(deg), e.value});
    }
    gens.push_back(std::move(ts));
  }

  EchelonBasis basis(fb.size(), LeadOrder::Highest);
  auto count_below = [&](std::size_t n) {
    std::size_t c = 0;
    for (std::size_t r = 0; r < basis.rank(); ++r)
      if (basis.lead(r) < fb.offset(n + 1)) ++c;
    return c;
  };
  for (std::size_t d = 0; d <= top; ++d) {
    if (d >= 2) {
      for (std::size_t a = 0; a + 2 <= d; ++a) {
        const std::size_t b = d - 2 - a;
        const std::size_t na = ipow(g, a), nb = ipow(g, b);
        for (std::size_t u = 0; u < na; ++u)
          for (std::size_t w = 0; w < nb; ++w)
            for (const auto& q : gens) {
              SparseVector v;
              v.reserve(q.size());
              for (const auto& t : q) {
                const std::size_t local = (u * ipow(g, t.degree) + t.local) * nb + w;
                v.push_back({fb.offset(a + t.degree + b) + local, t.value});
              }
              std::sort(v.begin(), v.end(), [](const Entry& x, const Entry& y) { return x.index < y.index; });
              basis.insert(std::move(v));
            }
      }
    }
    for (std::size_t n = 0; n <= max_degree; ++n)
      if (d >= n && d - n <= slack) tower.dims[n][d - n] = count_below(n);
  }
  for (std::size_t n = 0; n <= max_degree; ++n) {
    std::vector<SparseVector> rows;
    for (std::size_t r = 0; r < basis.rank(); ++r)
      if (basis.lead(r) < fb.offset(n + 1)) rows.push_back(basis.rows()[r]);
    tower.spaces.push_back(Subspace::span(fb.offset(n + 1), rows));
  }
  return tower;
}

SaturationResult saturate(const NQPresentation& p, std::size_t n, std::size_t slack) {
  SaturationTower t = saturate_all(p, n, slack);
  return {n, slack, t.spaces[n], t.dims[n], t.stabilized(n)};
}

FiltrationReport filtration_dims(const NQPresentation& p, std::size_t max_degree, std::size_t slack) {
  SaturationTower t = saturate_all(p, max_degree, slack);
  const FilteredTensorBasis fb(p.gen_dim(), max_degree);
  FiltrationReport rep;
  rep.max_degree = max_degree;
  rep.slack = slack;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    rep.filtered.push_back(fb.offset(n + 1) - t.dims[n][slack]);
    rep.graded.push_back(rep.filtered[n] - (n ? rep.filtered[n - 1] : 0));
    rep.stabilized.push_back(t.stabilized(n));
  }
  return rep;
}

WeakQlsVerdict weak_qls_check(const NQPresentation& p, std::size_t max_degree, std::size_t slack) {
  WeakQlsVerdict v;
  v.filtration = filtration_dims(p, max_degree, slack);
  v.quadratic_dims = hilbert(p.underlying(), max_degree);
  for (std::size_t n = 0; n <= max_degree; ++n)
    if (v.filtration.graded[n] != v.quadratic_dims[n]) {
      v.first_mismatch = n;
      v.quadratic_gr = false;
      break;
    }
  v.pbw = v.quadratic_gr;
  return v;
}

NQPresentation change_complement(const NQPresentation& p, std::span<const Scalar> alpha) {
  const std::size_t g = p.gen_dim();
  if (alpha.size() != g) throw DimensionMismatch("change_complement: alpha needs one value per generator");
  const Subspace& i = p.quadratic_part();
  Matrix phi = p.phi();
  Vector h = p.h();
  for (std::size_t r = 0; r < i.dim(); ++r) {
    Scalar aphi;
    for (std::size_t c = 0; c < g; ++c) aphi += alpha[c] * p.phi().at(r, c);
    h[r] -= aphi;
    for (const auto& e : i.rows()[r]) {
      const std::size_t a = e.index / g, b = e.index % g;
      phi.at(r, b) -= e.value * alpha[a];  // alpha_1: v (x) w -> alpha(v) w
      phi.at(r, a) -= e.value * alpha[b];  // alpha_2: v (x) w -> alpha(w) v
      h[r] += e.value * alpha[a] * alpha[b];
    }
  }
  std::optional<Vector> eps;
  if (p.augmentation()) eps = add(*p.augmentation(), alpha);
  return NQPresentation(p.gen_names(), i, std::move(phi), std::move(h), p.field(), std::move(eps));
}

SparseVector substitute_shift(const SparseVector& x, std::span<const Scalar> alpha, const FilteredTensorBasis& basis) {
  const std::size_t g = basis.gen_dim();
  if (alpha.size() != g) throw DimensionMismatch("substitute_shift: alpha needs one value per generator");
  Vector out(basis.size());
  for (const auto& e : x) {
    const std::size_t deg = basis.degree_of(e.index);
    const Word w = index_word(e.index - basis.offset(deg), TensorBasis(g, deg));
    // Expand prod (v_i + alpha(v_i)) over the subsets of kept letters.
    for (std::size_t mask = 0; mask < (std::size_t{1} << deg); ++mask) {
      Scalar c = e.value;
      std::size_t local = 0, kept = 0;
      for (std::size_t i = 0; i < deg && !c.is_zero(); ++i) {
        if (mask >> i & 1) {
          local = local * g + w[i];
          ++kept;
        } else {
          c *= alpha[w[i]];
        }
      }
      if (!c.is_zero()) out[basis.offset(kept) + local] += c;
    }
  }
  return to_sparse(out);
}

void validate_augmentation(const NQPresentation& p) {
  if (!p.augmentation()) return;
  const Vector& eps = *p.augmentation();
  const std::size_t g = p.gen_dim();
  for (std::size_t r = 0; r < p.quadratic_part().dim(); ++r) {
    Scalar v = p.h()[r];
    for (std::size_t c = 0; c < g; ++c) v += eps[c] * p.phi().at(r, c);
    for (const auto& e : p.quadratic_part().rows()[r]) v += e.value * eps[e.index / g] * eps[e.index % g];
    if (!v.is_zero())
      throw InvariantViolation("augmentation does not extend to a ring map: relation " + std::to_string(r) +
                               " evaluates to " + v.str());
  }
}

NQPresentation augmentation_shift(const NQPresentation& p) {
  if (!p.augmentation()) throw InvariantViolation("presentation has no augmentation");
  validate_augmentation(p);
  Vector alpha = scaled(*p.augmentation(), Scalar(-1));
  return change_complement(p, alpha);
}

std::vector<std::string> relation_strings(const NQPresentation& p) {
  const std::size_t g = p.gen_dim();
  const FilteredTensorBasis fb(g, 2);
  std::vector<std::string> out;
  for (auto row : j2_rows(p)) {
    // Highest degree first, words in lex order within a degree.
    std::stable_sort(row.begin(), row.end(), [&](const Entry& a, const Entry& b) {
      return fb.degree_of(a.index) > fb.degree_of(b.index);
    });
    std::string s;
    for (auto it = row.begin(); it != row.end(); ++it) {
      const std::size_t deg = fb.degree_of(it->index);
      const Word w = index_word(it->index - fb.offset(deg), TensorBasis(g, deg));
      Scalar c = it->value;
      const bool neg = c.modulus() == 0 && c.to_mpq() < 0;
      if (neg) c = -c;
      if (!s.empty()) s += neg ? " - " : " + ";
      else if (neg) s += "-";
      const std::string word = word_label(p.gen_names(), w);
      if (deg == 0)
        s += c.str();
      else if (c.is_one())
        s += word;
      else
        s += c.str() + "*" + word;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace nqd

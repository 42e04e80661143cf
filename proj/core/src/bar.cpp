#include "nqd/bar.hpp"

#include <algorithm>

#include "nqd/duality.hpp"
#include "nqd/echelon.hpp"
#include "nqd/errors.hpp"

namespace nqd {

namespace {

SparseVector merge_entries(std::vector<Entry> v) {
  std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  SparseVector out;
  for (auto& e : v) {
    if (!out.empty() && out.back().index == e.index)
      out.back().value += e.value;
    else
      out.push_back(std::move(e));
  }
  SparseVector clean;
  for (auto& e : out)
    if (!e.value.is_zero()) clean.push_back(std::move(e));
  return clean;
}

void compositions(std::size_t m, std::size_t n, const std::vector<std::size_t>& dims, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == n) {
    if (m == 0) out.push_back(cur);
    return;
  }
  const std::size_t left = n - cur.size();
  if (m < left) return;
  for (std::size_t i = 1; i + (left - 1) <= m; ++i) {
    if (dims[i] == 0) continue;
    cur.push_back(i);
    compositions(m - i, n, dims, cur, out);
    cur.pop_back();
  }
}

}  // namespace

bool SparseMap::is_zero() const {
  for (const auto& c : columns)
    if (!c.empty()) return false;
  return true;
}

SparseMap SparseMap::transpose() const {
  SparseMap t(cols, rows);
  for (std::size_t j = 0; j < cols; ++j)
    for (const auto& e : columns[j]) t.columns[e.index].push_back({j, e.value});
  return t;
}

SparseVector SparseMap::apply(const SparseVector& x) const {
  std::vector<Entry> acc;
  for (const auto& e : x)
    for (const auto& f : columns.at(e.index)) acc.push_back({f.index, e.value * f.value});
  return merge_entries(std::move(acc));
}

Matrix SparseMap::dense() const {
  Matrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (const auto& e : columns[j]) m.at(e.index, j) = e.value;
  return m;
}

SparseMap operator*(const SparseMap& a, const SparseMap& b) {
  if (a.cols != b.rows) throw DimensionMismatch("sparse product: inner dimensions differ");
  SparseMap out(a.rows, b.cols);
  for (std::size_t j = 0; j < b.cols; ++j) out.columns[j] = a.apply(b.columns[j]);
  return out;
}

SparseMap operator+(const SparseMap& a, const SparseMap& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw DimensionMismatch("sparse sum: shapes differ");
  SparseMap out(a.rows, a.cols);
  for (std::size_t j = 0; j < a.cols; ++j) {
    std::vector<Entry> acc(a.columns[j].begin(), a.columns[j].end());
    acc.insert(acc.end(), b.columns[j].begin(), b.columns[j].end());
    out.columns[j] = merge_entries(std::move(acc));
  }
  return out;
}

std::size_t rank(const SparseMap& m) {
  EchelonBasis e(m.rows, LeadOrder::Highest);
  for (const auto& c : m.columns)
    if (!c.empty()) e.insert(c);
  return e.rank();
}

BarBasis::BarBasis(const GradedAlgebra& b, std::size_t n, std::size_t m) : n_(n), m_(m) {
  for (std::size_t i = 0; i <= m; ++i) dims_.push_back(b.dim(i));
  std::vector<std::size_t> cur;
  compositions(m, n, dims_, cur, comps_);
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    offsets_.push_back(size_);
    std::size_t block = 1;
    for (std::size_t d : comps_[c]) block *= dims_[d];
    size_ += block;
    comp_index_[comps_[c]] = c;
  }
  offsets_.push_back(size_);
}

std::vector<std::pair<std::size_t, std::size_t>> BarBasis::decode(std::size_t idx) const {
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), idx);
  const std::size_t c = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  std::size_t local = idx - offsets_[c];
  const auto& comp = comps_[c];
  std::vector<std::pair<std::size_t, std::size_t>> out(comp.size());
  for (std::size_t j = comp.size(); j-- > 0;) {
    out[j] = {comp[j], local % dims_[comp[j]]};
    local /= dims_[comp[j]];
  }
  return out;
}

std::size_t BarBasis::encode(const std::vector<std::pair<std::size_t, std::size_t>>& factors) const {
  std::vector<std::size_t> comp;
  std::size_t local = 0;
  for (const auto& [deg, idx] : factors) {
    comp.push_back(deg);
    local = local * dims_.at(deg) + idx;
  }
  return offsets_[comp_index_.at(comp)] + local;
}

std::string BarBasis::label(const GradedAlgebra& b, std::size_t idx) const {
  std::string s = "(";
  const auto f = decode(idx);
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (j) s += "|";
    s += b.label(f[j].first, f[j].second);
  }
  return s + ")";
}

int partial_sign(const std::vector<std::size_t>& degrees, std::size_t k) {
  std::size_t e = k;
  for (std::size_t j = 0; j < k; ++j) e += degrees[j];
  return e % 2 ? -1 : 1;
}

int insertion_sign(const std::vector<std::size_t>& degrees, std::size_t k) {
  std::size_t e = k - 1;
  for (std::size_t j = 0; j + 1 < k; ++j) e += degrees[j];
  return e % 2 ? -1 : 1;
}

BarComplex::BarComplex(CdgAlgebra psi, std::size_t max_internal)
    : base_(psi.base_ptr()), max_(max_internal), cache_(std::make_shared<Cache>()) {
  if (base_->dim(0) != 1) throw InvariantViolation("the bar complex needs B^0 = k");
  d_cols_.resize(max_ + 1);
  for (std::size_t i = 1; i < max_; ++i) {
    if (base_->dim(i) == 0) continue;
    const Matrix& dm = psi.differential_matrix(i);
    for (std::size_t a = 0; a < base_->dim(i); ++a) d_cols_[i].push_back(to_sparse(dm.column(a)));
  }
  h_ = to_sparse(psi.curvature());
  psi_.emplace(std::move(psi));
}

BarComplex::BarComplex(AlgebraPtr b, std::size_t max_internal)
    : base_(std::move(b)), max_(max_internal), cache_(std::make_shared<Cache>()) {
  if (base_->dim(0) != 1) throw InvariantViolation("the bar complex needs B^0 = k");
  d_cols_.resize(max_ + 1);
}

std::size_t BarComplex::reach() const {
  if (!h_.empty()) return 2;
  for (const auto& deg : d_cols_)
    for (const auto& c : deg)
      if (!c.empty()) return 1;
  return 0;
}

const BarBasis& BarComplex::basis(std::size_t n, std::size_t m) const {
  std::lock_guard lock(cache_->mutex);
  auto& slot = cache_->bases[{n, m}];
  if (!slot) slot = std::make_unique<BarBasis>(*base_, n, m);
  return *slot;
}

const SparseMap& BarComplex::partial(std::size_t n, std::size_t m) const { return cached(Kind::Partial, n, m); }
const SparseMap& BarComplex::differential(std::size_t n, std::size_t m) const {
  return cached(Kind::Differential, n, m);
}
const SparseMap& BarComplex::curvature_insertion(std::size_t n, std::size_t m) const {
  return cached(Kind::Curvature, n, m);
}

const SparseMap& BarComplex::cached(Kind kind, std::size_t n, std::size_t m) const {
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->maps.find({static_cast<int>(kind), n, m});
    if (it != cache_->maps.end()) return *it->second;
  }
  auto built = std::make_unique<SparseMap>(build(kind, n, m));
  std::lock_guard lock(cache_->mutex);
  auto& slot = cache_->maps[{static_cast<int>(kind), n, m}];
  if (!slot) slot = std::move(built);
  return *slot;
}

SparseMap BarComplex::build(Kind kind, std::size_t n, std::size_t m) const {
  const BarBasis& src = basis(n, m);
  const GradedAlgebra& b = *base_;
  switch (kind) {
    case Kind::Partial: {
      if (n == 0) return SparseMap(0, src.size());
      const BarBasis& tgt = basis(n - 1, m);
      SparseMap out(tgt.size(), src.size());
      for (std::size_t idx = 0; idx < src.size(); ++idx) {
        const auto f = src.decode(idx);
        std::vector<std::size_t> degs;
        for (const auto& x : f) degs.push_back(x.first);
        std::vector<Entry> acc;
        for (std::size_t k = 1; k < n; ++k) {
          const std::size_t i = f[k - 1].first, j = f[k].first;
          const auto& prod = b.product_table(i, j)[f[k - 1].second * b.dim(j) + f[k].second];
          const int s = partial_sign(degs, k);
          for (const auto& e : prod) {
            std::vector<std::pair<std::size_t, std::size_t>> g(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(k - 1));
            g.push_back({i + j, e.index});
            g.insert(g.end(), f.begin() + static_cast<std::ptrdiff_t>(k + 1), f.end());
            acc.push_back({tgt.encode(g), s > 0 ? e.value : -e.value});
          }
        }
        out.columns[idx] = merge_entries(std::move(acc));
      }
      return out;
    }
    case Kind::Differential: {
      const BarBasis& tgt = basis(n, m + 1);
      SparseMap out(tgt.size(), src.size());
      for (std::size_t idx = 0; idx < src.size(); ++idx) {
        const auto f = src.decode(idx);
        std::vector<std::size_t> degs;
        for (const auto& x : f) degs.push_back(x.first);
        std::vector<Entry> acc;
        for (std::size_t k = 1; k <= n; ++k) {
          const std::size_t i = f[k - 1].first;
          if (i >= d_cols_.size() || d_cols_[i].empty()) continue;
          const int s = insertion_sign(degs, k);
          for (const auto& e : d_cols_[i][f[k - 1].second]) {
            auto g = f;
            g[k - 1] = {i + 1, e.index};
            acc.push_back({tgt.encode(g), s > 0 ? e.value : -e.value});
          }
        }
        out.columns[idx] = merge_entries(std::move(acc));
      }
      return out;
    }
    case Kind::Curvature: {
      const BarBasis& tgt = basis(n + 1, m + 2);
      SparseMap out(tgt.size(), src.size());
      if (h_.empty()) return out;
      for (std::size_t idx = 0; idx < src.size(); ++idx) {
        const auto f = src.decode(idx);
        std::vector<std::size_t> degs;
        for (const auto& x : f) degs.push_back(x.first);
        std::vector<Entry> acc;
        for (std::size_t k = 1; k <= n + 1; ++k) {
          const int s = insertion_sign(degs, k);
          for (const auto& e : h_) {
            auto g = f;
            g.insert(g.begin() + static_cast<std::ptrdiff_t>(k - 1), {2, e.index});
            acc.push_back({tgt.encode(g), s > 0 ? e.value : -e.value});
          }
        }
        out.columns[idx] = merge_entries(std::move(acc));
      }
      return out;
    }
  }
  return {};
}

std::size_t BarComplex::total_offset(std::size_t k, std::size_t m) const {
  std::size_t off = 0;
  for (std::size_t j = k; j < m && j <= max_; ++j) off += basis(j - k, j).size();
  return off;
}

std::size_t BarComplex::total_size(std::size_t k) const { return total_offset(k, max_ + 1); }

SparseMap BarComplex::total(std::size_t k) const {
  SparseMap out(total_size(k + 1), total_size(k));
  for (std::size_t m = k; m <= max_; ++m) {
    const std::size_t n = m - k;
    const std::size_t src_off = total_offset(k, m);
    auto add_block = [&](const SparseMap& block, std::size_t tgt_m) {
      const std::size_t tgt_off = total_offset(k + 1, tgt_m);
      for (std::size_t j = 0; j < block.cols; ++j) {
        auto& col = out.columns[src_off + j];
        std::vector<Entry> acc(col.begin(), col.end());
        for (const auto& e : block.columns[j]) acc.push_back({tgt_off + e.index, e.value});
        col = merge_entries(std::move(acc));
      }
    };
    if (n >= 1 && m >= k + 1) add_block(partial(n, m), m);
    if (m + 1 <= max_ && psi_) add_block(differential(n, m), m + 1);
    if (m + 2 <= max_ && psi_ && !h_.empty()) add_block(curvature_insertion(n, m), m + 2);
  }
  return out;
}

SquareZeroReport check_square_zero(const BarComplex& bar) {
  SquareZeroReport rep;
  const std::size_t M = bar.max_internal();
  auto record = [&](const char* name, std::size_t n, std::size_t m, const SparseMap& x) {
    ++rep.evaluated;
    if (!x.is_zero()) {
      rep.ok = false;
      rep.checks.push_back({name, n, m, false});
    }
  };
  for (std::size_t m = 0; m <= M; ++m)
    for (std::size_t n = 0; n <= m; ++n) {
      if (n >= 2) record("partial^2", n, m, bar.partial(n - 1, m) * bar.partial(n, m));
      if (n >= 1 && m + 1 <= M)
        record("partial d + d partial", n, m,
               bar.partial(n, m + 1) * bar.differential(n, m) + bar.differential(n - 1, m) * bar.partial(n, m));
      if (m + 2 <= M) {
        SparseMap x = bar.differential(n, m + 1) * bar.differential(n, m);
        x = x + bar.partial(n + 1, m + 2) * bar.curvature_insertion(n, m);
        if (n >= 1) x = x + bar.curvature_insertion(n - 1, m) * bar.partial(n, m);
        record("d^2 + partial delta + delta partial", n, m, x);
      }
      if (m + 3 <= M)
        record("d delta + delta d", n, m,
               bar.differential(n + 1, m + 2) * bar.curvature_insertion(n, m) +
                   bar.curvature_insertion(n, m + 1) * bar.differential(n, m));
      if (m + 4 <= M)
        record("delta^2", n, m, bar.curvature_insertion(n + 1, m + 2) * bar.curvature_insertion(n, m));
    }
  for (std::size_t k = 0; k + 2 <= M; ++k) {
    // Entries of D^2 landing inside the window are exact: D never lowers m.
    record("D^2", k, 0, bar.total(k + 1) * bar.total(k));
  }
  return rep;
}

namespace {

// dims of (row space of `rows` as vectors in k^size) cap prefix, for each prefix length.
std::vector<std::size_t> prefix_intersections(const SparseMap& map_with_rows_as_columns, std::size_t size,
                                              const std::vector<std::size_t>& prefixes) {
  EchelonBasis e(size, LeadOrder::Highest);
  for (const auto& c : map_with_rows_as_columns.columns)
    if (!c.empty()) e.insert(c);
  std::vector<std::size_t> out;
  for (std::size_t p : prefixes) {
    std::size_t count = 0;
    for (std::size_t r = 0; r < e.rank(); ++r)
      if (e.lead(r) < p) ++count;
    out.push_back(count);
  }
  return out;
}

}  // namespace

BarCohomology bar_cohomology(const BarComplex& bar, std::size_t k) {
  const std::size_t M = bar.max_internal();
  BarCohomology out;
  out.index = k;
  out.max_internal = M;
  const std::size_t size = bar.total_size(k);
  std::vector<std::size_t> prefixes;
  for (std::size_t m = 0; m <= M; ++m) prefixes.push_back(bar.total_offset(k, m + 1));
  // Boundaries: rows of D_k, i.e. columns of its transpose.
  const std::vector<std::size_t> bnd = prefix_intersections(bar.total(k).transpose(), size, prefixes);
  // Cocycles on a prefix: p - rank of the first p rows of D_{k-1}.
  std::vector<std::size_t> cyc;
  if (k == 0) {
    cyc = prefixes;
  } else {
    const SparseMap rows = bar.total(k - 1).transpose();
    EchelonBasis e(rows.rows, LeadOrder::Highest);
    std::size_t next = 0;
    for (std::size_t p : prefixes) {
      for (; next < p; ++next)
        if (!rows.columns[next].empty()) e.insert(rows.columns[next]);
      cyc.push_back(p - e.rank());
    }
  }
  const std::size_t reach = bar.reach();
  for (std::size_t m = 0; m <= M; ++m) {
    out.filtered.push_back(cyc[m] - bnd[m]);
    out.edge.push_back(m + reach > M);
  }
  return out;
}

BarCohomology bar_cohomology(const CdgAlgebra& psi, std::size_t k, std::size_t max_internal) {
  return bar_cohomology(BarComplex(psi, max_internal), k);
}

std::vector<Subspace> h0_boundaries(const BarComplex& bar) {
  const std::size_t M = bar.max_internal();
  const std::size_t size = bar.total_size(0);
  EchelonBasis e(size, LeadOrder::Highest);
  for (const auto& c : bar.total(0).transpose().columns)
    if (!c.empty()) e.insert(c);
  std::vector<Subspace> out;
  for (std::size_t m = 0; m <= M; ++m) {
    const std::size_t p = bar.total_offset(0, m + 1);
    std::vector<SparseVector> rows;
    for (std::size_t r = 0; r < e.rank(); ++r)
      if (e.lead(r) < p) rows.push_back(e.rows()[r]);
    out.push_back(Subspace::span(p, rows));
  }
  return out;
}

H0Comparison h0_compare(const CdgAlgebra& psi, std::size_t max_degree, std::size_t slack) {
  const std::size_t M = max_degree + slack;
  const BarComplex bar(psi, M);
  const BarCohomology h = bar_cohomology(bar, 0);
  const std::vector<Subspace> bnd = h0_boundaries(bar);
  const NQPresentation p = reconstruct(psi);
  const FiltrationReport f = filtration_dims(p, max_degree, slack);
  H0Comparison out;
  out.max_degree = max_degree;
  out.slack = slack;
  for (std::size_t m = 0; m <= max_degree; ++m) {
    out.bar_dims.push_back(h.filtered[m]);
    out.filtration_dims.push_back(f.filtered[m]);
    out.edge.push_back(h.edge[m]);
    const bool same = bnd[m] == saturate(p, m, M - m).space;
    out.subspaces_equal.push_back(same);
    if ((!same || h.filtered[m] != f.filtered[m]) && !out.first_mismatch) out.first_mismatch = m;
  }
  out.ok = !out.first_mismatch.has_value();
  return out;
}

PbwVerdict pbw_check(const CdgAlgebra& psi, std::size_t max_degree, std::size_t slack) {
  const auto* b = dynamic_cast<const QuadraticAlgebra*>(&psi.base());
  if (b == nullptr) throw InvariantViolation("pbw_check needs a quadratic base algebra");
  PbwVerdict out;
  out.max_degree = max_degree;
  out.gr_dims = filtration_dims(reconstruct(psi), max_degree, slack).graded;
  out.dual_dims = hilbert(quadratic_dual(*b), max_degree);
  for (std::size_t n = 0; n <= max_degree; ++n)
    if (out.gr_dims[n] != out.dual_dims[n]) {
      out.holds = false;
      out.first_failure = n;
      break;
    }
  out.base_koszul = koszul_verdict(*b, max_degree);
  return out;
}

ExtTable ext_table(const GradedAlgebra& a, std::size_t max_degree) {
  const AlgebraPtr ptr(std::shared_ptr<const GradedAlgebra>(), &a);
  const BarComplex bar(ptr, max_degree);
  ExtTable t;
  t.max_degree = max_degree;
  t.dims.assign(max_degree + 1, std::vector<std::size_t>(max_degree + 1, 0));
  for (std::size_t m = 0; m <= max_degree; ++m)
    for (std::size_t n = 0; n <= m; ++n) {
      const std::size_t dim = bar.basis(n, m).size();
      const std::size_t out = rank(bar.partial(n, m));
      const std::size_t in = n + 1 <= m ? rank(bar.partial(n + 1, m)) : 0;
      t.dims[n][m] = dim - out - in;
    }
  return t;
}

KoszulVerdict koszul_verdict(const GradedAlgebra& a, std::size_t max_degree) {
  KoszulVerdict v;
  v.max_degree = max_degree;
  v.table = ext_table(a, max_degree);
  for (std::size_t j = 0; j <= max_degree; ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      if (i == j || v.table.dims[i][j] == 0) continue;
      if (v.koszul) v.witness = std::make_pair(i, j);
      v.koszul = false;
      if (j == i + 1) v.weak = false;
    }
  return v;
}

}  // namespace nqd

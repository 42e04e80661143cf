#include "nqd/subspace.hpp"

#include <algorithm>

#include "nqd/errors.hpp"

namespace nqd {

void Subspace::index_pivots() {
  pivots_.clear();
  pivot_row_.assign(ambient_, -1);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    pivots_.push_back(rows_[r].front().index);
    pivot_row_[rows_[r].front().index] = static_cast<std::int32_t>(r);
  }
}

Subspace Subspace::span(std::size_t ambient, const std::vector<SparseVector>& generators) {
  EchelonBasis basis(ambient, LeadOrder::Lowest);
  for (const auto& g : generators) basis.insert(g);
  basis.back_substitute();
  Subspace s(ambient);
  s.rows_ = basis.sorted_rows();
  s.index_pivots();
  return s;
}

Subspace Subspace::span(const Matrix& rows) {
  std::vector<SparseVector> gens;
  gens.reserve(rows.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r) gens.push_back(to_sparse(rows.row(r)));
  return span(rows.cols(), gens);
}

Subspace Subspace::full(std::size_t ambient) {
  Subspace s(ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.rows_.push_back({{i, Scalar(1)}});
  s.index_pivots();
  return s;
}

Subspace Subspace::from_echelon(const EchelonBasis& basis) {
  return span(basis.ambient_dim(), basis.rows());
}

std::vector<std::size_t> Subspace::non_pivots() const {
  std::vector<std::size_t> out;
  out.reserve(codim());
  for (std::size_t c = 0; c < ambient_; ++c)
    if (pivot_row_.empty() || pivot_row_[c] < 0) out.push_back(c);
  return out;
}

Matrix Subspace::basis_matrix() const {
  Matrix m(rows_.size(), ambient_);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& e : rows_[r]) m.at(r, e.index) = e.value;
  return m;
}

SparseVector Subspace::reduce(const SparseVector& v) const {
  if (rows_.empty()) return v;
  // Rows are fully reduced, so the pivot coefficients of v are final: subtract
  // each once and keep what lands on non-pivot columns.
  SparseVector acc = v;
  for (const auto& e : v) {
    if (e.index >= ambient_) throw DimensionMismatch("subspace reduce: index out of range");
    const std::int32_t r = pivot_row_[e.index];
    if (r >= 0) acc = sparse_axpy(acc, -e.value, rows_[r]);
  }
  return acc;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("subspace containment: ambient mismatch");
  return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const SparseVector& r) { return contains(r); });
}

bool operator==(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_ || a.rows_.size() != b.rows_.size()) return false;
  for (std::size_t r = 0; r < a.rows_.size(); ++r) {
    const auto& x = a.rows_[r];
    const auto& y = b.rows_[r];
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].index != y[i].index || !(x[i].value == y[i].value)) return false;
  }
  return true;
}

RowReduction row_reduce(const Matrix& m) {
  Subspace s = Subspace::span(m);
  return {s.basis_matrix(), s.pivots()};
}

std::size_t rank(const Matrix& m) {
  EchelonBasis basis(m.cols(), LeadOrder::Lowest);
  for (std::size_t r = 0; r < m.rows(); ++r) basis.insert(to_sparse(m.row(r)));
  return basis.rank();
}

Subspace annihilator(const Subspace& u) {
  const std::size_t n = u.ambient_dim();
  const auto free = u.non_pivots();
  std::vector<std::int32_t> slot(n, -1);
  for (std::size_t i = 0; i < free.size(); ++i) slot[free[i]] = static_cast<std::int32_t>(i);
  // One solution per free column f: x_f = 1, x_{pivot(r)} = -row_r[f].
  std::vector<SparseVector> gens(free.size());
  for (std::size_t i = 0; i < free.size(); ++i) gens[i].push_back({free[i], Scalar(1)});
  for (std::size_t r = 0; r < u.rows().size(); ++r) {
    const std::size_t p = u.pivots()[r];
    for (const auto& e : u.rows()[r]) {
      if (e.index == p) continue;
      gens[slot[e.index]].push_back({p, -e.value});
    }
  }
  for (auto& g : gens)
    std::sort(g.begin(), g.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  return Subspace::span(n, gens);
}

Subspace kernel(const Matrix& m) { return annihilator(Subspace::span(m)); }

Subspace sum(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim()) throw DimensionMismatch("subspace sum: ambient mismatch");
  std::vector<SparseVector> gens = u.rows();
  gens.insert(gens.end(), w.rows().begin(), w.rows().end());
  return Subspace::span(u.ambient_dim(), gens);
}

Subspace intersect(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim()) throw DimensionMismatch("subspace intersection: ambient mismatch");
  return annihilator(sum(annihilator(u), annihilator(w)));
}

std::pair<Subspace, Subspace> meet_join(const Subspace& u, const Subspace& w) {
  return {intersect(u, w), sum(u, w)};
}

std::optional<Vector> solve_any(const Matrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows()) throw DimensionMismatch("solve: right-hand side length mismatch");
  const std::size_t n = m.cols();
  EchelonBasis basis(n + 1, LeadOrder::Lowest);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseVector row = to_sparse(m.row(r));
    if (!b[r].is_zero()) row.push_back({n, b[r]});
    basis.insert(std::move(row));
  }
  basis.back_substitute();
  Vector x(n);
  for (std::size_t r = 0; r < basis.rank(); ++r) {
    const std::size_t lead = basis.lead(r);
    if (lead == n) return std::nullopt;
    x[lead] = sparse_at(basis.rows()[r], n);
  }
  return x;
}

Vector solve(const Matrix& m, std::span<const Scalar> b) {
  if (m.rows() != m.cols()) throw DimensionMismatch("solve: matrix is not square");
  if (rank(m) != m.cols()) throw InvariantViolation("solve: matrix is singular");
  return *solve_any(m, b);
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse: matrix is not square");
  const std::size_t n = m.rows();
  EchelonBasis basis(2 * n, LeadOrder::Lowest);
  for (std::size_t r = 0; r < n; ++r) {
    SparseVector row = to_sparse(m.row(r));
    row.push_back({n + r, Scalar(1)});
    basis.insert(std::move(row));
  }
  basis.back_substitute();
  Matrix inv(n, n);
  for (std::size_t r = 0; r < basis.rank(); ++r) {
    const std::size_t lead = basis.lead(r);
    if (lead >= n) throw InvariantViolation("inverse: matrix is singular");
    for (const auto& e : basis.rows()[r])
      if (e.index >= n) inv.at(lead, e.index - n) = e.value;
  }
  return inv;
}

}  // namespace nqd

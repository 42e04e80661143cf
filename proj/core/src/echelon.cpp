#include "nqd/echelon.hpp"

#include <algorithm>
#include <numeric>

#include "nqd/errors.hpp"

namespace nqd {

EchelonBasis::EchelonBasis(std::size_t ambient, LeadOrder order)
    : ambient_(ambient), order_(order), pivot_of_column_(ambient, -1) {}

std::optional<std::size_t> EchelonBasis::pivot_row(std::size_t column) const {
  if (column >= ambient_ || pivot_of_column_[column] < 0) return std::nullopt;
  return static_cast<std::size_t>(pivot_of_column_[column]);
}

std::size_t EchelonBasis::lead_of(const SparseVector& v) const {
  return order_ == LeadOrder::Lowest ? v.front().index : v.back().index;
}

SparseVector EchelonBasis::reduce(SparseVector v) const {
  // A pivot row only has entries on the far side of its lead, so walking v in
  // lead order never revisits an eliminated position.
  if (order_ == LeadOrder::Lowest) {
    std::size_t pos = 0;
    while (pos < v.size()) {
      const std::int32_t r = pivot_of_column_[v[pos].index];
      if (r < 0) {
        ++pos;
        continue;
      }
      Scalar c = -v[pos].value;
      v = sparse_axpy(v, c, rows_[r]);
    }
  } else {
    std::size_t remaining = v.size();
    while (remaining > 0) {
      const std::size_t pos = remaining - 1;
      const std::int32_t r = pivot_of_column_[v[pos].index];
      if (r < 0) {
        --remaining;
        continue;
      }
      const std::size_t after = v.size() - remaining;
      Scalar c = -v[pos].value;
      v = sparse_axpy(v, c, rows_[r]);
      remaining = v.size() - after;
    }
  }
  return v;
}

bool EchelonBasis::insert(SparseVector v) {
  for (const auto& e : v)
    if (e.index >= ambient_) throw DimensionMismatch("echelon insert: index out of range");
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const std::size_t lead = lead_of(v);
  const Scalar inv = sparse_at(v, lead).inverse();
  if (!inv.is_one()) v = sparse_scaled(v, inv);
  pivot_of_column_[lead] = static_cast<std::int32_t>(rows_.size());
  leads_.push_back(lead);
  rows_.push_back(std::move(v));
  return true;
}

void EchelonBasis::back_substitute() {
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  // Rows whose leads lie on the tail side are finished first; reducing a row
  // against finished rows adds entries only at non-pivot columns.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return order_ == LeadOrder::Lowest ? leads_[a] > leads_[b] : leads_[a] < leads_[b];
  });
  for (std::size_t r : order) {
    SparseVector& row = rows_[r];
    const std::size_t own = leads_[r];
    std::vector<std::pair<std::int32_t, Scalar>> hits;
    for (const auto& e : row) {
      if (e.index == own) continue;
      const std::int32_t p = pivot_of_column_[e.index];
      if (p >= 0) hits.emplace_back(p, -e.value);
    }
    for (const auto& [p, c] : hits) row = sparse_axpy(row, c, rows_[p]);
  }
}

std::vector<SparseVector> EchelonBasis::sorted_rows() const {
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return leads_[a] < leads_[b]; });
  std::vector<SparseVector> out;
  out.reserve(rows_.size());
  for (std::size_t r : order) out.push_back(rows_[r]);
  return out;
}

}  // namespace nqd

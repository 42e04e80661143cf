#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nqd/matrix.hpp"

namespace nqd {

/// Which nonzero entry of a row is its pivot.
enum class LeadOrder {
  Lowest,   // leftmost column (canonical reduced row-echelon form)
  Highest,  // rightmost column (degree-descending monomial orders)
};

/// Incremental sparse row-echelon basis. Inserted vectors are fully reduced
/// against the current rows before they are stored, so row leads are distinct
/// and every stored row has lead coefficient 1. Older rows are not reduced
/// against newer ones until back_substitute() is called.
class EchelonBasis {
 public:
  EchelonBasis(std::size_t ambient, LeadOrder order);

  /// Returns true when v was independent of the current rows.
  bool insert(SparseVector v);
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  LeadOrder order() const { return order_; }
  const std::vector<SparseVector>& rows() const { return rows_; }
  std::size_t lead(std::size_t row) const { return leads_[row]; }
  std::optional<std::size_t> pivot_row(std::size_t column) const;

  /// Clears every entry at another row's lead column (reduced echelon form).
  void back_substitute();

  /// Rows sorted by lead, ascending.
  std::vector<SparseVector> sorted_rows() const;

 private:
  std::size_t lead_of(const SparseVector& v) const;

  std::size_t ambient_;
  LeadOrder order_;
  std::vector<SparseVector> rows_;
  std::vector<std::size_t> leads_;
  std::vector<std::int32_t> pivot_of_column_;
};

}  // namespace nqd

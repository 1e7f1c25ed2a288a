#pragma once

#include <addmin/rational.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace addmin {

/// Reduced row echelon form of an augmented matrix [M | r] over the
/// rationals. Columns are visited in `column_order`; the first usable row
/// becomes the pivot row of each visited column.
struct EchelonForm {
  Matrix rows;                       // reduced augmented rows (last entry is the rhs)
  std::vector<std::size_t> pivots;   // pivot column of rows[0..rank)
  bool consistent = true;            // no row reads 0 = nonzero

  [[nodiscard]] std::size_t rank() const { return pivots.size(); }
};

inline EchelonForm reduce(Matrix augmented, const std::vector<std::size_t>& column_order) {
  EchelonForm ef;
  std::size_t next_row = 0;
  const std::size_t row_count = augmented.size();
  for (std::size_t col : column_order) {
    if (next_row == row_count) break;
    std::size_t pivot = next_row;
    while (pivot < row_count && augmented[pivot][col] == 0) ++pivot;
    if (pivot == row_count) continue;
    std::swap(augmented[pivot], augmented[next_row]);

    Vector& prow = augmented[next_row];
    const Rat scale = prow[col];
    for (Rat& v : prow) v /= scale;
    for (std::size_t r = 0; r < row_count; ++r) {
      if (r == next_row || augmented[r][col] == 0) continue;
      const Rat factor = augmented[r][col];
      for (std::size_t c = 0; c < prow.size(); ++c) augmented[r][c] -= factor * prow[c];
    }
    ef.pivots.push_back(col);
    ++next_row;
  }
  for (std::size_t r = next_row; r < row_count; ++r) {
    if (augmented[r].back() != 0) ef.consistent = false;
  }
  augmented.resize(next_row);
  ef.rows = std::move(augmented);
  return ef;
}

inline EchelonForm reduce(Matrix augmented) {
  std::vector<std::size_t> order;
  if (!augmented.empty()) {
    for (std::size_t c = 0; c + 1 < augmented.front().size(); ++c) order.push_back(c);
  }
  return reduce(std::move(augmented), order);
}

}  // namespace addmin

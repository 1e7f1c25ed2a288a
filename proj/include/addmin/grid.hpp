#pragma once

#include <addmin/errors.hpp>
#include <addmin/problem.hpp>
#include <addmin/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace addmin {

/// Breakpoints of coordinate j: alpha_check_j followed by the distinct
/// column entries a_ij strictly above it, in increasing order. Between two
/// consecutive breakpoints every min(a_ij, x_j) is either x_j or a_ij.
struct ThresholdGrid {
  Vector q;
  bool in_j_star = false;

  /// Number of breakpoints above q[0].
  [[nodiscard]] std::size_t t() const { return q.size() - 1; }
};

inline std::vector<ThresholdGrid> build_grids(const ProblemInstance& instance,
                                              const BoundVectors& bv) {
  std::vector<ThresholdGrid> grids(instance.cols());
  for (std::size_t j = 0; j < instance.cols(); ++j) {
    if (bv.alpha_check[j] > bv.alpha_hat[j]) {
      throw PreconditionError("cannot build threshold grid for column " + std::to_string(j + 1) +
                              ": alpha_check = " + to_string(bv.alpha_check[j]) +
                              " exceeds alpha_hat = " + to_string(bv.alpha_hat[j]));
    }
    Vector above;
    for (std::size_t i = 0; i < instance.rows(); ++i) {
      if (instance.a(i, j) > bv.alpha_check[j]) above.push_back(instance.a(i, j));
    }
    std::sort(above.begin(), above.end());
    above.erase(std::unique(above.begin(), above.end()), above.end());

    ThresholdGrid& g = grids[j];
    g.q.reserve(above.size() + 1);
    g.q.push_back(bv.alpha_check[j]);
    g.q.insert(g.q.end(), above.begin(), above.end());
    g.in_j_star = above.empty();
  }
  return grids;
}

enum class CellKind { minimal, maximal };

inline const char* to_string(CellKind kind) {
  return kind == CellKind::minimal ? "min" : "max";
}

/// Index of a grid segment. kInfinity marks a coordinate pinned to 1 in the
/// maximal enumeration.
using SegmentIndex = std::size_t;
inline constexpr SegmentIndex kInfinity = std::numeric_limits<SegmentIndex>::max();

using IndexTuple = std::vector<SegmentIndex>;

inline std::string to_string(const IndexTuple& tuple) {
  std::string out = "(";
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    if (j > 0) out += ", ";
    out += tuple[j] == kInfinity ? std::string("inf") : std::to_string(tuple[j]);
  }
  return out + ")";
}

inline constexpr std::size_t kDefaultMaxCells = 1'000'000;

/// The Cartesian product of per-coordinate candidate segment indices.
struct IndexSpace {
  CellKind kind = CellKind::minimal;
  std::vector<std::vector<SegmentIndex>> lists;
  std::size_t total_count = 0;
};

inline IndexSpace build_index_space(const std::vector<ThresholdGrid>& grids, CellKind kind,
                                    std::size_t max_cells = kDefaultMaxCells) {
  IndexSpace space;
  space.kind = kind;
  space.lists.reserve(grids.size());
  BigInt product = 1;
  for (const ThresholdGrid& g : grids) {
    std::vector<SegmentIndex> list;
    if (kind == CellKind::minimal && g.in_j_star) {
      list.push_back(0);
    } else {
      for (std::size_t k = 1; k <= g.t(); ++k) list.push_back(k);
      if (kind == CellKind::maximal) list.push_back(kInfinity);
    }
    product *= list.size();
    space.lists.push_back(std::move(list));
  }
  if (product > max_cells) {
    throw CapExceeded("enumeration needs " + product.str() + " index tuples, cap is " +
                      std::to_string(max_cells));
  }
  space.total_count = product.convert_to<std::size_t>();
  return space;
}

/// Visits every tuple of the space in lexicographic order over coordinates
/// (last coordinate varies fastest), each list in stored order.
template <typename Visitor>
void for_each_index(const IndexSpace& space, Visitor&& visit) {
  const std::size_t n = space.lists.size();
  for (const auto& list : space.lists) {
    if (list.empty()) return;
  }
  std::vector<std::size_t> pos(n, 0);
  IndexTuple tuple(n);
  for (std::size_t j = 0; j < n; ++j) tuple[j] = space.lists[j][0];
  while (true) {
    visit(static_cast<const IndexTuple&>(tuple));
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++pos[j] < space.lists[j].size()) {
        tuple[j] = space.lists[j][pos[j]];
        break;
      }
      pos[j] = 0;
      tuple[j] = space.lists[j][0];
      if (j == 0) return;
    }
    if (n == 0) return;
  }
}

inline std::vector<IndexTuple> iterate_indices(const IndexSpace& space) {
  std::vector<IndexTuple> out;
  out.reserve(space.total_count);
  for_each_index(space, [&out](const IndexTuple& t) { out.push_back(t); });
  return out;
}

}  // namespace addmin

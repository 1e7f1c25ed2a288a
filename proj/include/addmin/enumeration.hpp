#pragma once

#include <addmin/box_system.hpp>
#include <addmin/cell.hpp>
#include <addmin/errors.hpp>
#include <addmin/grid.hpp>
#include <addmin/problem.hpp>
#include <addmin/rational.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace addmin {

struct EnumerationOptions {
  std::size_t max_cells = kDefaultMaxCells;
  /// Return the single-point answer directly when alpha_check (minimal) or
  /// the all-ones vector (maximal) already solves the system.
  bool use_shortcut = true;
};

namespace detail {

inline SolutionCell point_cell(CellKind kind, const Vector& x) {
  SolutionCell cell;
  cell.source = {kind, {}};
  cell.origin = x;
  cell.directions.assign(x.size(), Vector{});
  cell.witness = x;
  return cell;
}

inline void require_solution(const ProblemInstance& instance, const Vector& x) {
  if (!is_solution(instance, x)) {
    throw DomainError("point " + to_string(x) + " is not a solution");
  }
}

}  // namespace detail

/// All minimal solutions, as the nonempty cells of the subsystems indexed
/// by K, in index order. Empty when the precheck fails.
inline std::vector<SolutionCell> enumerate_minimal(const ProblemInstance& instance,
                                                   const EnumerationOptions& options = {}) {
  const BoundVectors bv = bounds(instance);
  if (!precheck(instance, bv)) return {};
  if (options.use_shortcut && is_solution(instance, bv.alpha_check)) {
    return {detail::point_cell(CellKind::minimal, bv.alpha_check)};
  }
  const auto grids = build_grids(instance, bv);
  const IndexSpace space = build_index_space(grids, CellKind::minimal, options.max_cells);
  std::vector<SolutionCell> cells;
  for_each_index(space, [&](const IndexTuple& k) {
    if (auto cell = solve_box_system(build_minimal_system(instance, grids, k))) {
      cells.push_back(std::move(*cell));
    }
  });
  return cells;
}

/// All maximal solutions, as the nonempty cells of the subsystems indexed
/// by M, in index order. Empty when the precheck fails.
inline std::vector<SolutionCell> enumerate_maximal(const ProblemInstance& instance,
                                                   const EnumerationOptions& options = {}) {
  const BoundVectors bv = bounds(instance);
  if (!precheck(instance, bv)) return {};
  const Vector ones(instance.cols(), Rat(1));
  if (options.use_shortcut && is_solution(instance, ones)) {
    return {detail::point_cell(CellKind::maximal, ones)};
  }
  const auto grids = build_grids(instance, bv);
  const IndexSpace space = build_index_space(grids, CellKind::maximal, options.max_cells);
  std::vector<SolutionCell> cells;
  for_each_index(space, [&](const IndexTuple& m) {
    if (auto cell = solve_box_system(build_maximal_system(instance, grids, m))) {
      cells.push_back(std::move(*cell));
    }
  });
  return cells;
}

/// A solution x is minimal iff every coordinate is bounded by some entry of
/// its column: for each j there is an i with x_j <= a_ij.
inline bool is_minimal(const ProblemInstance& instance, const Vector& x) {
  detail::require_solution(instance, x);
  for (std::size_t j = 0; j < instance.cols(); ++j) {
    bool covered = false;
    for (std::size_t i = 0; i < instance.rows() && !covered; ++i) {
      covered = x[j] <= instance.a(i, j);
    }
    if (!covered) return false;
  }
  return true;
}

/// A solution x is maximal iff every coordinate below 1 is strictly below
/// some entry of its column.
inline bool is_maximal(const ProblemInstance& instance, const Vector& x) {
  detail::require_solution(instance, x);
  for (std::size_t j = 0; j < instance.cols(); ++j) {
    if (x[j] == 1) continue;
    bool covered = false;
    for (std::size_t i = 0; i < instance.rows() && !covered; ++i) {
      covered = x[j] < instance.a(i, j);
    }
    if (!covered) return false;
  }
  return true;
}

/// Lowers every coordinate that exceeds its column maximum to that maximum.
/// The result is a minimal solution below x.
inline Vector minimal_below(const ProblemInstance& instance, const Vector& x) {
  detail::require_solution(instance, x);
  const Vector col_max = bounds(instance).alpha_hat;
  Vector out = x;
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (out[j] > col_max[j]) out[j] = col_max[j];
  }
  return out;
}

/// Raises to 1 every coordinate that already reaches its column maximum.
/// The result is a maximal solution above x.
inline Vector maximal_above(const ProblemInstance& instance, const Vector& x) {
  detail::require_solution(instance, x);
  const Vector col_max = bounds(instance).alpha_hat;
  Vector out = x;
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (out[j] != 1 && out[j] >= col_max[j]) out[j] = 1;
  }
  return out;
}

inline bool is_solvable(const ProblemInstance& instance, const EnumerationOptions& options = {}) {
  return !enumerate_minimal(instance, options).empty();
}

/// Every minimal and maximal solution of an instance. When the instance is
/// solvable its solution set is the union of the order intervals
///
///   { x in [0,1]^n | lo <= x <= hi },  lo a minimal and hi a maximal solution,
///
/// over all such pairs. Membership of a given point is best decided with
/// is_solution; this is a report of the structure.
struct SolutionSetDescription {
  std::vector<SolutionCell> minimal_cells;
  std::vector<SolutionCell> maximal_cells;
  bool solvable = false;
  bool alpha_check_is_solution = false;  // minimal_cells is the single point alpha_check
  bool all_ones_is_solution = false;     // maximal_cells is the single point (1,...,1)
  PrecheckVerdict precheck;
};

inline SolutionSetDescription describe_solution_set(const ProblemInstance& instance,
                                                    const EnumerationOptions& options = {}) {
  SolutionSetDescription d;
  const BoundVectors bv = bounds(instance);
  d.precheck = precheck(instance, bv);
  d.minimal_cells = enumerate_minimal(instance, options);
  d.maximal_cells = enumerate_maximal(instance, options);
  d.solvable = !d.minimal_cells.empty();
  if (d.precheck && options.use_shortcut) {
    d.alpha_check_is_solution = is_solution(instance, bv.alpha_check);
    d.all_ones_is_solution = is_solution(instance, Vector(instance.cols(), Rat(1)));
  }
  return d;
}

}  // namespace addmin

#pragma once

#include <addmin/box_system.hpp>
#include <addmin/errors.hpp>
#include <addmin/fourier_motzkin.hpp>
#include <addmin/grid.hpp>
#include <addmin/linear_algebra.hpp>
#include <addmin/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace addmin {

struct CellSource {
  CellKind kind = CellKind::minimal;
  IndexTuple index;

  friend bool operator==(const CellSource&, const CellSource&) = default;
};

/// Exact solution set of one subsystem in parametric form:
///
///   { origin + directions * t  |  t satisfies every param constraint }
///
/// directions is n x d (d may be 0). The box bounds of the subsystem,
/// intersected with [0,1], are part of the param constraints.
struct SolutionCell {
  CellSource source;
  Vector origin;
  Matrix directions;
  std::vector<LinearConstraint> param_constraints;
  Vector witness;

  [[nodiscard]] std::size_t dimension() const {
    return directions.empty() ? 0 : directions.front().size();
  }

  /// Maps parameters to a point; does not check the constraints.
  [[nodiscard]] Vector point(const Vector& t) const {
    if (t.size() != dimension()) throw DimensionError("parameter vector has wrong length");
    Vector x = origin;
    for (std::size_t j = 0; j < x.size(); ++j) {
      for (std::size_t k = 0; k < t.size(); ++k) x[j] += directions[j][k] * t[k];
    }
    return x;
  }

  /// Parameters of x when x = origin + directions * t has a unique
  /// solution t; nullopt when x is off the affine hull.
  [[nodiscard]] std::optional<Vector> parameters_of(const Vector& x) const;

  /// Exact membership of x in the cell's point set.
  [[nodiscard]] bool contains(const Vector& x) const;

  friend bool operator==(const SolutionCell&, const SolutionCell&) = default;
};

inline std::optional<Vector> SolutionCell::parameters_of(const Vector& x) const {
  if (x.size() != origin.size()) throw DimensionError("point has wrong length");
  const std::size_t d = dimension();
  Matrix aug(origin.size(), Vector(d + 1));
  for (std::size_t j = 0; j < origin.size(); ++j) {
    for (std::size_t k = 0; k < d; ++k) aug[j][k] = directions[j][k];
    aug[j][d] = x[j] - origin[j];
  }
  EchelonForm ef = reduce(std::move(aug));
  if (!ef.consistent || ef.rank() != d) return std::nullopt;
  Vector t(d);
  for (std::size_t r = 0; r < ef.rank(); ++r) t[ef.pivots[r]] = ef.rows[r][d];
  return t;
}

inline bool SolutionCell::contains(const Vector& x) const {
  if (x.size() != origin.size()) throw DimensionError("point has wrong length");
  const std::size_t d = dimension();
  if (auto t = parameters_of(x)) return satisfies_all(param_constraints, *t);

  // Rank-deficient directions: x is in the cell iff the constraints plus
  // origin + D t = x are jointly feasible.
  std::vector<LinearConstraint> cs = param_constraints;
  for (std::size_t j = 0; j < origin.size(); ++j) {
    Vector row(d);
    Vector neg(d);
    for (std::size_t k = 0; k < d; ++k) {
      row[k] = directions[j][k];
      neg[k] = -directions[j][k];
    }
    cs.push_back({row, x[j] - origin[j], false});
    cs.push_back({neg, origin[j] - x[j], false});
  }
  return FourierMotzkin(std::move(cs), d).feasible();
}

/// Solves one box-constrained subsystem exactly. Returns nullopt when the
/// subsystem has no solution; otherwise a cell whose point set is exactly
/// the subsystem's solution set, with a midpoint witness.
///
/// Equality rows are reduced with the highest-numbered free variables as
/// pivots, so the leading free variables become the parameters.
inline std::optional<SolutionCell> solve_box_system(const BoxLinearSystem& sys) {
  const std::size_t n = sys.vars();
  if (sys.bounds.size() != n) throw DimensionError("bounds and fixed maps differ in length");

  std::vector<std::size_t> free_vars;
  for (std::size_t j = 0; j < n; ++j) {
    if (sys.is_free(j)) {
      if (!sys.bounds[j]) throw PreconditionError("free variable without bounds");
      free_vars.push_back(j);
    } else if (*sys.fixed[j] < 0 || *sys.fixed[j] > 1) {
      return std::nullopt;
    }
  }
  const std::size_t f = free_vars.size();

  Matrix aug;
  aug.reserve(sys.rows.size());
  for (const EqualityRow& row : sys.rows) {
    if (row.coeffs.size() != n) throw DimensionError("equality row has wrong length");
    Vector r(f + 1);
    for (std::size_t c = 0; c < f; ++c) r[c] = row.coeffs[free_vars[c]];
    r[f] = row.rhs - row.constant;
    aug.push_back(std::move(r));
  }
  std::vector<std::size_t> order(f);
  for (std::size_t c = 0; c < f; ++c) order[c] = f - 1 - c;
  EchelonForm ef = reduce(std::move(aug), order);
  if (!ef.consistent) return std::nullopt;

  // Non-pivot free variables become parameters, in increasing index order.
  std::vector<std::optional<std::size_t>> pivot_row(f);
  for (std::size_t r = 0; r < ef.rank(); ++r) pivot_row[ef.pivots[r]] = r;
  std::vector<std::size_t> param_cols;
  for (std::size_t c = 0; c < f; ++c) {
    if (!pivot_row[c]) param_cols.push_back(c);
  }
  const std::size_t d = param_cols.size();

  SolutionCell cell;
  cell.source = {sys.kind, sys.source};
  cell.origin.assign(n, Rat(0));
  cell.directions.assign(n, Vector(d, Rat(0)));
  for (std::size_t j = 0; j < n; ++j) {
    if (sys.fixed[j]) cell.origin[j] = *sys.fixed[j];
  }
  for (std::size_t k = 0; k < d; ++k) cell.directions[free_vars[param_cols[k]]][k] = 1;
  for (std::size_t c = 0; c < f; ++c) {
    if (!pivot_row[c]) continue;
    const Vector& row = ef.rows[*pivot_row[c]];
    const std::size_t j = free_vars[c];
    cell.origin[j] = row[f];
    for (std::size_t k = 0; k < d; ++k) cell.directions[j][k] = -row[param_cols[k]];
  }

  std::vector<LinearConstraint> cs;
  cs.reserve(2 * f);
  for (std::size_t j : free_vars) {
    const VariableBounds& b = *sys.bounds[j];
    Rat lower = b.lower;
    bool lower_strict = b.lower_strict;
    if (lower < 0) {
      lower = 0;
      lower_strict = false;
    }
    Rat upper = b.upper;
    bool upper_strict = b.upper_strict;
    if (upper > 1) {
      upper = 1;
      upper_strict = false;
    }
    // lower <= origin_j + D_j t   and   origin_j + D_j t <= upper
    Vector neg(d);
    for (std::size_t k = 0; k < d; ++k) neg[k] = -cell.directions[j][k];
    cs.push_back({std::move(neg), cell.origin[j] - lower, lower_strict});
    cs.push_back({cell.directions[j], upper - cell.origin[j], upper_strict});
  }

  FourierMotzkin elimination(std::move(cs), d);
  if (!elimination.feasible()) return std::nullopt;
  cell.param_constraints = elimination.stage(d);
  cell.witness = cell.point(elimination.midpoint_solution());
  return cell;
}

}  // namespace addmin

#pragma once

#include <addmin/errors.hpp>
#include <addmin/grid.hpp>
#include <addmin/problem.hpp>
#include <addmin/rational.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace addmin {

struct VariableBounds {
  Rat lower;
  bool lower_strict = false;
  Rat upper;
  bool upper_strict = false;
};

/// Row i reads  sum_j coeffs[j] * x_j + constant = rhs  with coeffs in {0,1}.
/// Fixed variables always have coefficient 0; their contribution is part of
/// the constant.
struct EqualityRow {
  std::vector<int> coeffs;
  Rat constant;
  Rat rhs;
};

/// One candidate linear subsystem selected by an index tuple: pinned
/// variables, interval bounds on the others, and 0/1 equality rows.
struct BoxLinearSystem {
  CellKind kind = CellKind::minimal;
  IndexTuple source;
  std::vector<std::optional<Rat>> fixed;
  std::vector<std::optional<VariableBounds>> bounds;  // engaged exactly for free variables
  std::vector<EqualityRow> rows;

  [[nodiscard]] std::size_t vars() const { return fixed.size(); }
  [[nodiscard]] bool is_free(std::size_t j) const { return !fixed[j].has_value(); }
};

namespace detail {

// Coefficient of x_j in row i when x_j ranges over [q[k-1], q[k]]: 1 if
// a_ij >= q[k] (min is x_j), 0 if a_ij <= q[k-1] (min is a_ij).
inline int segment_coefficient(const Rat& a, const ThresholdGrid& g, SegmentIndex k,
                               std::size_t i, std::size_t j) {
  if (a >= g.q[k]) return 1;
  if (a <= g.q[k - 1]) return 0;
  throw Error("internal: a[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "] = " +
              to_string(a) + " lies strictly inside grid segment " + std::to_string(k));
}

inline void check_tuple(const ProblemInstance& instance, const std::vector<ThresholdGrid>& grids,
                        const IndexTuple& tuple) {
  if (grids.size() != instance.cols() || tuple.size() != instance.cols()) {
    throw DimensionError("index tuple " + to_string(tuple) + " does not match " +
                         std::to_string(instance.cols()) + " columns");
  }
}

}  // namespace detail

/// The linear system whose solution set is the family of minimal solutions
/// selected by k: x_j pinned to q_0j on J*, q_(k_j-1)j <= x_j <= q_(k_j)j
/// elsewhere.
inline BoxLinearSystem build_minimal_system(const ProblemInstance& instance,
                                            const std::vector<ThresholdGrid>& grids,
                                            const IndexTuple& k) {
  detail::check_tuple(instance, grids, k);
  const std::size_t m = instance.rows();
  const std::size_t n = instance.cols();

  BoxLinearSystem sys;
  sys.kind = CellKind::minimal;
  sys.source = k;
  sys.fixed.resize(n);
  sys.bounds.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const ThresholdGrid& g = grids[j];
    if (g.in_j_star) {
      if (k[j] != 0) {
        throw PreconditionError("k" + to_string(k) + " must use index 0 on coordinate " +
                                std::to_string(j + 1));
      }
      sys.fixed[j] = g.q[0];
    } else {
      if (k[j] < 1 || k[j] > g.t()) {
        throw PreconditionError("k" + to_string(k) + " is outside K on coordinate " +
                                std::to_string(j + 1));
      }
      sys.bounds[j] = VariableBounds{g.q[k[j] - 1], false, g.q[k[j]], false};
    }
  }

  sys.rows.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    EqualityRow& row = sys.rows[i];
    row.coeffs.assign(n, 0);
    row.constant = 0;
    row.rhs = instance.b(i);
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& a = instance.a(i, j);
      if (sys.fixed[j]) {
        row.constant += std::min(a, *sys.fixed[j]);
      } else if (detail::segment_coefficient(a, grids[j], k[j], i, j) == 1) {
        row.coeffs[j] = 1;
      } else {
        row.constant += a;
      }
    }
  }
  return sys;
}

/// The linear system whose solution set is the family of maximal solutions
/// selected by m: x_j = 1 where m_j is infinite, q_(m_j-1)j <= x_j < q_(m_j)j
/// elsewhere.
inline BoxLinearSystem build_maximal_system(const ProblemInstance& instance,
                                            const std::vector<ThresholdGrid>& grids,
                                            const IndexTuple& mt) {
  detail::check_tuple(instance, grids, mt);
  const std::size_t m = instance.rows();
  const std::size_t n = instance.cols();

  BoxLinearSystem sys;
  sys.kind = CellKind::maximal;
  sys.source = mt;
  sys.fixed.resize(n);
  sys.bounds.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const ThresholdGrid& g = grids[j];
    if (mt[j] == kInfinity) {
      sys.fixed[j] = Rat(1);
    } else {
      if (mt[j] < 1 || mt[j] > g.t()) {
        throw PreconditionError("m" + to_string(mt) + " is outside M on coordinate " +
                                std::to_string(j + 1));
      }
      sys.bounds[j] = VariableBounds{g.q[mt[j] - 1], false, g.q[mt[j]], true};
    }
  }

  sys.rows.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    EqualityRow& row = sys.rows[i];
    row.coeffs.assign(n, 0);
    row.constant = 0;
    row.rhs = instance.b(i);
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& a = instance.a(i, j);
      if (sys.fixed[j]) {
        row.constant += a;  // min(a_ij, 1)
      } else if (detail::segment_coefficient(a, grids[j], mt[j], i, j) == 1) {
        row.coeffs[j] = 1;
      } else {
        row.constant += a;
      }
    }
  }
  return sys;
}

}  // namespace addmin

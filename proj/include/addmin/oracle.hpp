#pragma once

// Independent checks for the enumeration results. Nothing here uses the
// threshold grids, the subsystem builders, or the elimination solver: points
// are classified by direct evaluation of the equations, and cells are
// sampled from their own constraint lists.

#include <addmin/cell.hpp>
#include <addmin/enumeration.hpp>
#include <addmin/errors.hpp>
#include <addmin/linear_algebra.hpp>
#include <addmin/problem.hpp>
#include <addmin/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace addmin {

/// True iff no single coordinate of the solution x can be lowered while
/// keeping a solution. Each coordinate is probed just below x_j, above the
/// largest column entry smaller than x_j, so the probe sees exactly the
/// rows that a smaller value would change.
inline bool coordinate_decrease_oracle(const ProblemInstance& instance, const Vector& x) {
  if (!is_solution(instance, x)) throw DomainError("point " + to_string(x) + " is not a solution");
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0) continue;
    Rat below = 0;
    for (std::size_t i = 0; i < instance.rows(); ++i) {
      if (instance.a(i, j) < x[j] && instance.a(i, j) > below) below = instance.a(i, j);
    }
    Vector probe = x;
    probe[j] = (below + x[j]) / 2;
    if (is_solution(instance, probe)) return false;
  }
  return true;
}

/// True iff no single coordinate of the solution x can be raised while
/// keeping a solution.
inline bool coordinate_increase_oracle(const ProblemInstance& instance, const Vector& x) {
  if (!is_solution(instance, x)) throw DomainError("point " + to_string(x) + " is not a solution");
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 1) continue;
    Rat above = 1;
    for (std::size_t i = 0; i < instance.rows(); ++i) {
      if (instance.a(i, j) > x[j] && instance.a(i, j) < above) above = instance.a(i, j);
    }
    Vector probe = x;
    probe[j] = (x[j] + above) / 2;
    if (is_solution(instance, probe)) return false;
  }
  return true;
}

/// Seeded generator: std::mt19937_64 with rejection sampling, so streams are
/// identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw PreconditionError("Rng::below needs a positive bound");
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  /// Uniform integer in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 engine_;
};

struct PlantedInstance {
  ProblemInstance instance;
  Vector planted;
};

/// Random instance with a known solution: a_ij and x*_j are drawn from the
/// grid {0, step, 2 step, ..., 1}, and b = A (.) x*. Rows with b_i = 0 are
/// redrawn. step must be 1/N for a positive integer N.
inline PlantedInstance random_solvable_instance(std::uint64_t seed, std::size_t m, std::size_t n,
                                                const Rat& step) {
  if (m == 0 || n == 0) throw PreconditionError("instance needs at least one row and column");
  if (step <= 0 || step > 1 || boost::multiprecision::numerator(step) != 1) {
    throw PreconditionError("grid step must be 1/N, got " + to_string(step));
  }
  const auto levels = boost::multiprecision::denominator(step).convert_to<std::uint64_t>();
  Rng rng(seed);
  auto draw = [&] { return Rat(BigInt(rng.below(levels + 1)), BigInt(levels)); };

  Vector x(n);
  bool all_zero = true;
  // An all-zero plant would force every b_i = 0.
  while (all_zero) {
    for (Rat& v : x) {
      v = draw();
      if (v != 0) all_zero = false;
    }
  }

  Matrix a(m, Vector(n));
  Vector b(m);
  for (std::size_t i = 0; i < m; ++i) {
    do {
      b[i] = 0;
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] = draw();
        b[i] += std::min(a[i][j], x[j]);
      }
    } while (b[i] == 0);
  }
  return {ProblemInstance(std::move(a), std::move(b)), std::move(x)};
}

namespace detail {

// Visits every size-k subset of {0..n-1} in lexicographic order until the
// visitor returns false.
template <typename Visitor>
void for_each_subset(std::size_t n, std::size_t k, Visitor&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!visit(static_cast<const std::vector<std::size_t>&>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t r = i; r < k; ++r) idx[r] = idx[r - 1] + 1;
  }
}

inline bool satisfies_closure(const std::vector<LinearConstraint>& cs, const Vector& t) {
  for (const auto& c : cs) {
    LinearConstraint closed = c;
    closed.strict = false;
    if (!satisfies(closed, t)) return false;
  }
  return true;
}

}  // namespace detail

/// Vertices of the closure of a cell's parameter region, found by solving
/// every d-subset of constraints as equalities.
inline std::vector<Vector> closure_vertices(const SolutionCell& cell,
                                            std::size_t max_subsets = 20'000) {
  const std::size_t d = cell.dimension();
  const auto& cs = cell.param_constraints;
  std::vector<Vector> out;
  if (d == 0) return out;
  std::size_t visited = 0;
  detail::for_each_subset(cs.size(), d, [&](const std::vector<std::size_t>& pick) {
    if (++visited > max_subsets) return false;
    Matrix aug;
    for (std::size_t r : pick) {
      Vector row = cs[r].coeffs;
      row.push_back(cs[r].rhs);
      aug.push_back(std::move(row));
    }
    EchelonForm ef = reduce(std::move(aug));
    if (!ef.consistent || ef.rank() != d) return true;
    Vector t(d);
    for (std::size_t r = 0; r < d; ++r) t[ef.pivots[r]] = ef.rows[r][d];
    if (!detail::satisfies_closure(cs, t)) return true;
    for (const Vector& seen : out) {
      if (seen == t) return true;
    }
    out.push_back(std::move(t));
    return true;
  });
  return out;
}

/// `count` points of a nonempty cell: its witness, the closure vertices that
/// belong to the cell, then seeded random points on segments from the
/// witness towards closure vertices (stopping short of the vertex). Every
/// returned point satisfies the cell's constraints exactly.
inline std::vector<Vector> sample_cell(const SolutionCell& cell, std::uint64_t seed,
                                       std::size_t count) {
  std::vector<Vector> out;
  if (count == 0) return out;
  const std::size_t d = cell.dimension();
  if (d == 0) return std::vector<Vector>(count, cell.origin);

  // The witness always comes first, even when it is (wrongly) off the cell,
  // so that callers checking the samples see it.
  out.push_back(cell.witness);
  std::vector<Vector> params;
  if (auto t = cell.parameters_of(cell.witness); t && satisfies_all(cell.param_constraints, *t)) {
    params.push_back(std::move(*t));
  }
  const std::vector<Vector> vertices = closure_vertices(cell);
  for (const Vector& v : vertices) {
    if (out.size() >= count) break;
    if (satisfies_all(cell.param_constraints, v)) {
      params.push_back(v);
      out.push_back(cell.point(v));
    }
  }

  Rng rng(seed);
  const std::uint64_t denom = 997;
  std::size_t attempts = 0;
  while (out.size() < count && !vertices.empty() && !params.empty() && attempts < 50 * count) {
    ++attempts;
    const Vector anchor = params[rng.below(params.size())];
    const Vector& v = vertices[rng.below(vertices.size())];
    const Rat lambda(BigInt(rng.below(denom)), BigInt(denom));
    Vector t(d);
    for (std::size_t k = 0; k < d; ++k) t[k] = anchor[k] + lambda * (v[k] - anchor[k]);
    if (satisfies_all(cell.param_constraints, t)) {
      out.push_back(cell.point(t));
      params.push_back(std::move(t));
    }
  }
  for (std::size_t s = 0; out.size() < count; ++s) out.push_back(Vector(out[s]));
  return out;
}

struct Counterexample {
  std::string check;
  Vector point;
  std::string detail;
};

struct VerificationReport {
  std::size_t cells_checked = 0;
  std::size_t points_checked = 0;
  std::size_t trials_run = 0;
  std::size_t non_solutions_checked = 0;
  std::vector<Counterexample> counterexamples;

  [[nodiscard]] bool passed() const { return counterexamples.empty(); }
};

namespace detail {

inline bool in_any(const std::vector<SolutionCell>& cells, const Vector& x) {
  for (const auto& c : cells) {
    if (c.contains(x)) return true;
  }
  return false;
}

inline std::string cell_name(const SolutionCell& c) {
  return std::string(to_string(c.source.kind)) + " cell " + to_string(c.source.index);
}

}  // namespace detail

/// Limit points of a maximal cell that the cell excludes (closure vertices
/// failing a strict constraint). Each one must be non-maximal or lie in
/// another maximal cell; offenders are returned.
inline std::vector<Counterexample> check_strict_limits(const ProblemInstance& instance,
                                                       const std::vector<SolutionCell>& maximal) {
  std::vector<Counterexample> out;
  for (std::size_t c = 0; c < maximal.size(); ++c) {
    const SolutionCell& cell = maximal[c];
    for (const Vector& v : closure_vertices(cell)) {
      if (satisfies_all(cell.param_constraints, v)) continue;
      const Vector x = cell.point(v);
      if (!is_solution(instance, x)) {
        out.push_back({"strict-limit", x, "limit point of " + detail::cell_name(cell) +
                                              " is not a solution"});
        continue;
      }
      if (!is_maximal(instance, x)) continue;
      bool elsewhere = false;
      for (std::size_t o = 0; o < maximal.size() && !elsewhere; ++o) {
        elsewhere = o != c && maximal[o].contains(x);
      }
      if (!elsewhere) {
        out.push_back({"strict-limit", x, "maximal limit point of " + detail::cell_name(cell) +
                                              " is in no maximal cell"});
      }
    }
  }
  return out;
}

/// Seeded end-to-end check of a description:
///  - every sampled cell point is a solution of the right kind, by both the
///    classifier and the coordinate oracle;
///  - for `trials` random solutions, the constructed minimal point below and
///    maximal point above lie in some enumerated cell;
///  - perturbed points that are not solutions lie in no cell;
///  - excluded limit points of maximal cells are accounted for.
inline VerificationReport verify_description(const ProblemInstance& instance,
                                             const SolutionSetDescription& description,
                                             std::uint64_t seed, std::size_t trials,
                                             std::size_t samples_per_cell = 5) {
  VerificationReport report;
  auto fail = [&report](std::string check, Vector x, std::string detail) {
    report.counterexamples.push_back({std::move(check), std::move(x), std::move(detail)});
  };

  if (description.solvable != !description.minimal_cells.empty()) {
    fail("solvable-flag", {}, "solvable flag disagrees with the minimal cells");
  }
  if (description.minimal_cells.empty() != description.maximal_cells.empty()) {
    fail("empty-mismatch", {}, "exactly one of the minimal and maximal cell lists is empty");
  }

  std::vector<Vector> minimal_samples;
  std::uint64_t cell_seed = seed;
  auto check_cell = [&](const SolutionCell& cell) {
    ++report.cells_checked;
    const bool is_min_kind = cell.source.kind == CellKind::minimal;
    if (!cell.contains(cell.witness)) {
      fail("witness", cell.witness, "witness of " + detail::cell_name(cell) + " is not in the cell");
    }
    for (const Vector& x : sample_cell(cell, ++cell_seed, samples_per_cell)) {
      ++report.points_checked;
      bool in_box = true;
      for (const Rat& v : x) in_box = in_box && v >= 0 && v <= 1;
      if (!in_box) {
        fail("box", x, "point of " + detail::cell_name(cell) + " is outside [0,1]^n");
        continue;
      }
      if (!is_solution(instance, x)) {
        fail("solution", x, "point of " + detail::cell_name(cell) + " is not a solution");
        continue;
      }
      const bool classified = is_min_kind ? is_minimal(instance, x) : is_maximal(instance, x);
      const bool oracle = is_min_kind ? coordinate_decrease_oracle(instance, x)
                                      : coordinate_increase_oracle(instance, x);
      if (classified != oracle) {
        fail("oracle-agreement", x, "classifier and coordinate oracle disagree");
      }
      if (!classified || !oracle) {
        fail(is_min_kind ? "minimality" : "maximality", x,
             "point of " + detail::cell_name(cell) + " is not " +
                 (is_min_kind ? "minimal" : "maximal"));
      }
      if (is_min_kind) minimal_samples.push_back(x);
    }
  };
  for (const auto& cell : description.minimal_cells) check_cell(cell);
  for (const auto& cell : description.maximal_cells) check_cell(cell);

  for (auto& c : check_strict_limits(instance, description.maximal_cells)) {
    report.counterexamples.push_back(std::move(c));
  }

  if (minimal_samples.empty()) return report;

  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::uint64_t denom = 1000;
  auto check_solution = [&](const Vector& y) {
    const Vector lo = minimal_below(instance, y);
    const Vector hi = maximal_above(instance, y);
    if (!leq(lo, y) || !leq(y, hi)) fail("sandwich", y, "constructed bounds do not enclose the point");
    if (!detail::in_any(description.minimal_cells, lo)) {
      fail("minimal-completeness", lo, "minimal point below " + to_string(y) + " is in no minimal cell");
    }
    if (!detail::in_any(description.maximal_cells, hi)) {
      fail("maximal-completeness", hi, "maximal point above " + to_string(y) + " is in no maximal cell");
    }
  };

  for (std::size_t trial = 0; trial < trials; ++trial) {
    ++report.trials_run;
    const Vector& lo = minimal_samples[rng.below(minimal_samples.size())];
    const Vector hi = maximal_above(instance, lo);
    Vector y(lo.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
      y[j] = lo[j] + Rat(BigInt(rng.below(denom + 1)), BigInt(denom)) * (hi[j] - lo[j]);
    }
    if (!is_solution(instance, y)) {
      fail("order-convexity", y, "point between " + to_string(lo) + " and " + to_string(hi) +
                                     " is not a solution");
      continue;
    }
    check_solution(y);

    Vector p = y;
    const std::size_t j = rng.below(p.size());
    const Rat eps(1, 1000);
    p[j] = rng.below(2) == 0 ? p[j] - eps : p[j] + eps;
    if (p[j] < 0 || p[j] > 1) continue;
    if (is_solution(instance, p)) {
      check_solution(p);
      continue;
    }
    ++report.non_solutions_checked;
    if (detail::in_any(description.minimal_cells, p) || detail::in_any(description.maximal_cells, p)) {
      fail("non-solution", p, "a point that is not a solution lies in an enumerated cell");
    }
  }
  return report;
}

}  // namespace addmin

#pragma once

#include <addmin/errors.hpp>
#include <addmin/rational.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace addmin {

/// coeffs . t <= rhs, or coeffs . t < rhs when strict.
struct LinearConstraint {
  Vector coeffs;
  Rat rhs;
  bool strict = false;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

inline bool satisfies(const LinearConstraint& c, const Vector& t) {
  if (c.coeffs.size() != t.size()) throw DimensionError("constraint/point dimension mismatch");
  Rat lhs = 0;
  for (std::size_t k = 0; k < t.size(); ++k) lhs += c.coeffs[k] * t[k];
  return c.strict ? lhs < c.rhs : lhs <= c.rhs;
}

inline bool satisfies_all(const std::vector<LinearConstraint>& cs, const Vector& t) {
  for (const auto& c : cs) {
    if (!satisfies(c, t)) return false;
  }
  return true;
}

/// Feasible values of one variable given the others: lower/upper bounds
/// (absent when unbounded) with strictness.
struct Interval {
  std::optional<Rat> lower;
  bool lower_strict = false;
  std::optional<Rat> upper;
  bool upper_strict = false;

  [[nodiscard]] bool empty() const {
    if (!lower || !upper) return false;
    if (*lower < *upper) return false;
    return !(*lower == *upper && !lower_strict && !upper_strict);
  }

  [[nodiscard]] bool contains(const Rat& v) const {
    if (lower && (lower_strict ? v <= *lower : v < *lower)) return false;
    if (upper && (upper_strict ? v >= *upper : v > *upper)) return false;
    return true;
  }

  void tighten_lower(const Rat& v, bool strict) {
    if (!lower || v > *lower || (v == *lower && strict)) {
      lower = v;
      lower_strict = strict;
    }
  }

  void tighten_upper(const Rat& v, bool strict) {
    if (!upper || v < *upper || (v == *upper && strict)) {
      upper = v;
      upper_strict = strict;
    }
  }
};

/// Midpoint of a nonempty interval. When a side is unbounded the point is
/// one unit inside the other bound.
inline Rat midpoint(const Interval& iv) {
  if (iv.lower && iv.upper) return (*iv.lower + *iv.upper) / 2;
  if (iv.lower) return *iv.lower + 1;
  if (iv.upper) return *iv.upper - 1;
  return Rat(0);
}

namespace fm {

/// Scales c so that its first nonzero coefficient has magnitude 1.
inline void normalize(LinearConstraint& c) {
  for (const Rat& v : c.coeffs) {
    if (v != 0) {
      Rat scale = v < 0 ? Rat(-v) : v;
      for (Rat& w : c.coeffs) w /= scale;
      c.rhs /= scale;
      return;
    }
  }
}

inline bool is_constant(const LinearConstraint& c) {
  for (const Rat& v : c.coeffs) {
    if (v != 0) return false;
  }
  return true;
}

/// Normalizes, drops trivially true constant rows, and keeps only the
/// tightest constraint per coefficient vector. Returns nullopt when some
/// constant row is violated.
inline std::optional<std::vector<LinearConstraint>> simplify(std::vector<LinearConstraint> cs) {
  std::map<Vector, std::pair<Rat, bool>> tightest;
  std::vector<Vector> order;
  for (LinearConstraint& c : cs) {
    if (is_constant(c)) {
      const bool ok = c.strict ? Rat(0) < c.rhs : Rat(0) <= c.rhs;
      if (!ok) return std::nullopt;
      continue;
    }
    normalize(c);
    auto it = tightest.find(c.coeffs);
    if (it == tightest.end()) {
      order.push_back(c.coeffs);
      tightest.emplace(c.coeffs, std::make_pair(c.rhs, c.strict));
    } else if (c.rhs < it->second.first || (c.rhs == it->second.first && c.strict)) {
      it->second = {c.rhs, c.strict};
    }
  }
  std::vector<LinearConstraint> out;
  out.reserve(order.size());
  for (Vector& coeffs : order) {
    const auto& [rhs, strict] = tightest.at(coeffs);
    out.push_back({std::move(coeffs), rhs, strict});
  }
  return out;
}

/// Eliminates the last variable. The result has one fewer coefficient per
/// constraint; a combined constraint is strict iff either parent is.
inline std::optional<std::vector<LinearConstraint>> eliminate_last(
    const std::vector<LinearConstraint>& cs) {
  std::vector<LinearConstraint> out;
  std::vector<const LinearConstraint*> upper;  // positive coefficient on the variable
  std::vector<const LinearConstraint*> lower;  // negative coefficient
  for (const auto& c : cs) {
    const Rat& v = c.coeffs.back();
    if (v > 0) {
      upper.push_back(&c);
    } else if (v < 0) {
      lower.push_back(&c);
    } else {
      out.push_back({Vector(c.coeffs.begin(), c.coeffs.end() - 1), c.rhs, c.strict});
    }
  }
  for (const LinearConstraint* up : upper) {
    for (const LinearConstraint* lo : lower) {
      const Rat alpha = up->coeffs.back();
      const Rat beta = -lo->coeffs.back();
      LinearConstraint combined;
      combined.coeffs.resize(up->coeffs.size() - 1);
      for (std::size_t k = 0; k + 1 < up->coeffs.size(); ++k) {
        combined.coeffs[k] = beta * up->coeffs[k] + alpha * lo->coeffs[k];
      }
      combined.rhs = beta * up->rhs + alpha * lo->rhs;
      combined.strict = up->strict || lo->strict;
      out.push_back(std::move(combined));
    }
  }
  return simplify(std::move(out));
}

/// Bounds on variable k (0-based, the last of the first k+1) implied by
/// constraints over variables 0..k given fixed values of 0..k-1.
inline Interval bounds_on_last(const std::vector<LinearConstraint>& cs, const Vector& prefix) {
  Interval iv;
  for (const auto& c : cs) {
    const Rat& v = c.coeffs.back();
    Rat rest = c.rhs;
    for (std::size_t k = 0; k < prefix.size(); ++k) rest -= c.coeffs[k] * prefix[k];
    if (v > 0) {
      iv.tighten_upper(rest / v, c.strict);
    } else if (v < 0) {
      iv.tighten_lower(rest / v, c.strict);
    }
  }
  return iv;
}

}  // namespace fm

/// Result of eliminating every variable from a constraint system.
/// stages[k] holds the constraints over the first k variables; stages[d] is
/// the simplified input. A feasible system can be back-substituted one
/// variable at a time with any chooser that picks a point of each interval.
class FourierMotzkin {
 public:
  FourierMotzkin(std::vector<LinearConstraint> constraints, std::size_t dimension)
      : dimension_(dimension) {
    for (const auto& c : constraints) {
      if (c.coeffs.size() != dimension) throw DimensionError("constraint has wrong dimension");
    }
    stages_.resize(dimension + 1);
    auto current = fm::simplify(std::move(constraints));
    if (!current) return;
    stages_[dimension] = std::move(*current);
    for (std::size_t k = dimension; k > 0; --k) {
      auto next = fm::eliminate_last(stages_[k]);
      if (!next) return;
      stages_[k - 1] = std::move(*next);
    }
    feasible_ = true;
  }

  [[nodiscard]] bool feasible() const { return feasible_; }
  [[nodiscard]] std::size_t dimension() const { return dimension_; }
  [[nodiscard]] const std::vector<LinearConstraint>& stage(std::size_t k) const {
    return stages_.at(k);
  }

  /// Chooses each variable in turn from its feasible interval given the
  /// variables chosen before it.
  [[nodiscard]] Vector back_substitute(
      const std::function<Rat(const Interval&, std::size_t)>& choose) const {
    if (!feasible_) throw PreconditionError("back-substitution on an infeasible system");
    Vector t;
    t.reserve(dimension_);
    for (std::size_t k = 1; k <= dimension_; ++k) {
      Interval iv = fm::bounds_on_last(stages_[k], t);
      if (iv.empty()) throw Error("internal: empty interval during back-substitution");
      t.push_back(choose(iv, k - 1));
    }
    return t;
  }

  [[nodiscard]] Vector midpoint_solution() const {
    return back_substitute([](const Interval& iv, std::size_t) { return midpoint(iv); });
  }

 private:
  std::size_t dimension_;
  std::vector<std::vector<LinearConstraint>> stages_;
  bool feasible_ = false;
};

}  // namespace addmin

#pragma once

#include <addmin/errors.hpp>
#include <addmin/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>

namespace addmin {

/// A system of fuzzy relation equations with addition-min composition,
///
///   sum_j min(a_ij, x_j) = b_i   for every row i,
///
/// with a_ij in [0,1] and b_i > 0. Immutable after construction.
class ProblemInstance {
 public:
  ProblemInstance(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.empty()) throw DimensionError("matrix A must have at least one row");
    if (b_.size() != a_.size()) {
      throw DimensionError("A has " + std::to_string(a_.size()) + " rows but b has " +
                           std::to_string(b_.size()) + " entries");
    }
    const std::size_t n = a_.front().size();
    if (n == 0) throw DimensionError("matrix A must have at least one column");
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (a_[i].size() != n) {
        throw DimensionError("row " + std::to_string(i + 1) + " of A has " +
                             std::to_string(a_[i].size()) + " entries, expected " +
                             std::to_string(n));
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (a_[i][j] < 0 || a_[i][j] > 1) {
          throw DomainError("a[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
                            "] = " + to_string(a_[i][j]) + " is outside [0,1]");
        }
      }
      if (b_[i] <= 0) {
        throw DomainError("b[" + std::to_string(i + 1) + "] = " + to_string(b_[i]) +
                          " must be positive");
      }
    }
  }

  [[nodiscard]] std::size_t rows() const { return a_.size(); }
  [[nodiscard]] std::size_t cols() const { return a_.front().size(); }
  [[nodiscard]] const Matrix& a() const { return a_; }
  [[nodiscard]] const Vector& b() const { return b_; }
  [[nodiscard]] const Rat& a(std::size_t i, std::size_t j) const { return a_[i][j]; }
  [[nodiscard]] const Rat& b(std::size_t i) const { return b_[i]; }

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;

 private:
  Matrix a_;
  Vector b_;
};

/// Row-wise addition-min composition: entry i is sum_j min(a_ij, x_j).
inline Vector evaluate(const ProblemInstance& instance, const Vector& x) {
  if (x.size() != instance.cols()) {
    throw DimensionError("point has " + std::to_string(x.size()) + " coordinates, expected " +
                         std::to_string(instance.cols()));
  }
  Vector out(instance.rows());
  for (std::size_t i = 0; i < instance.rows(); ++i) {
    Rat sum = 0;
    for (std::size_t j = 0; j < instance.cols(); ++j) {
      sum += std::min(instance.a(i, j), x[j]);
    }
    out[i] = sum;
  }
  return out;
}

inline void require_unit_box(const Vector& x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < 0 || x[j] > 1) {
      throw DomainError("x[" + std::to_string(j + 1) + "] = " + to_string(x[j]) +
                        " is outside [0,1]");
    }
  }
}

/// True iff x lies in [0,1]^n and satisfies every equation exactly.
/// Throws DomainError if some coordinate is outside [0,1].
inline bool is_solution(const ProblemInstance& instance, const Vector& x) {
  if (x.size() != instance.cols()) {
    throw DimensionError("point has " + std::to_string(x.size()) + " coordinates, expected " +
                         std::to_string(instance.cols()));
  }
  require_unit_box(x);
  return evaluate(instance, x) == instance.b();
}

/// Componentwise bounds shared by the enumeration algorithms.
///
/// alpha_check is a lower bound on every solution. alpha_hat (the column
/// maxima of A) is an upper bound on every minimal solution. alpha_check may
/// exceed 1 or alpha_hat on unsolvable instances.
struct BoundVectors {
  Vector alpha_check;
  Vector alpha_hat;
};

inline BoundVectors bounds(const ProblemInstance& instance) {
  const std::size_t m = instance.rows();
  const std::size_t n = instance.cols();
  BoundVectors out{Vector(n, Rat(0)), Vector(n, Rat(0))};

  Vector row_sums(m, Rat(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) row_sums[i] += instance.a(i, j);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      out.alpha_hat[j] = std::max(out.alpha_hat[j], instance.a(i, j));
      // b_i minus the sum of the other entries of row i
      Rat need = instance.b(i) - (row_sums[i] - instance.a(i, j));
      out.alpha_check[j] = std::max(out.alpha_check[j], need);
    }
  }
  return out;
}

struct PrecheckVerdict {
  bool possibly_solvable = true;
  std::string reason;  // empty when possibly_solvable

  explicit operator bool() const { return possibly_solvable; }
};

/// Cheap necessary conditions for solvability. An infeasible verdict is
/// definitive; a possibly-solvable verdict is not a guarantee.
inline PrecheckVerdict precheck(const ProblemInstance& instance, const BoundVectors& bv) {
  PrecheckVerdict verdict;
  auto fail = [&verdict](const std::string& why) {
    verdict.possibly_solvable = false;
    if (!verdict.reason.empty()) verdict.reason += "; ";
    verdict.reason += why;
  };
  for (std::size_t j = 0; j < instance.cols(); ++j) {
    const std::string col = std::to_string(j + 1);
    if (bv.alpha_check[j] > bv.alpha_hat[j]) {
      fail("alpha_check[" + col + "] = " + to_string(bv.alpha_check[j]) +
           " exceeds alpha_hat[" + col + "] = " + to_string(bv.alpha_hat[j]));
    } else if (bv.alpha_check[j] > 1) {
      fail("alpha_check[" + col + "] = " + to_string(bv.alpha_check[j]) + " exceeds 1");
    }
  }
  for (std::size_t i = 0; i < instance.rows(); ++i) {
    Rat sum = 0;
    for (std::size_t j = 0; j < instance.cols(); ++j) sum += instance.a(i, j);
    if (instance.b(i) > sum) {
      fail("b[" + std::to_string(i + 1) + "] = " + to_string(instance.b(i)) +
           " exceeds the row sum " + to_string(sum));
    }
  }
  return verdict;
}

inline PrecheckVerdict precheck(const ProblemInstance& instance) {
  return precheck(instance, bounds(instance));
}

}  // namespace addmin

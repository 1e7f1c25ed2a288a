#include "test_support.hpp"

#include <gtest/gtest.h>

namespace addmin {
namespace {

using testing::make;
using testing::R;
using testing::V;
using testing::worked_example;

TEST(ParseDecimal, ExactValues) {
  EXPECT_EQ(parse_decimal("0.4"), Rat(2, 5));
  EXPECT_EQ(parse_decimal("1"), Rat(1));
  EXPECT_EQ(parse_decimal("1.4"), Rat(7, 5));
  EXPECT_EQ(parse_decimal("0.35"), Rat(7, 20));
  EXPECT_EQ(parse_decimal("-0.08"), Rat(-2, 25));
  EXPECT_EQ(parse_decimal(".5"), Rat(1, 2));
  EXPECT_EQ(parse_decimal("5."), Rat(5));
  EXPECT_EQ(parse_decimal("1e-1"), Rat(1, 10));
  EXPECT_EQ(parse_decimal("2.5E2"), Rat(250));
  EXPECT_EQ(parse_decimal("0.0"), Rat(0));
}

TEST(ParseDecimal, NeverGoesThroughBinaryFloat) {
  // 0.1 + 0.2 == 0.3 holds exactly, unlike in double.
  EXPECT_EQ(parse_decimal("0.1") + parse_decimal("0.2"), parse_decimal("0.3"));
}

TEST(ParseDecimal, MalformedNumeralNamesToken) {
  for (const char* bad : {"", "-", ".", "abc", "0.4.1", "1e", "0x10", "1,5", " 1"}) {
    try {
      parse_decimal(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(std::string("'") + bad + "'"), std::string::npos);
    }
  }
}

TEST(ParseRational, Fractions) {
  EXPECT_EQ(parse_rational("1/3"), Rat(1, 3));
  EXPECT_EQ(parse_rational("-2/4"), Rat(-1, 2));
  EXPECT_EQ(parse_rational("0.25"), Rat(1, 4));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("1/"), ParseError);
}

TEST(FormatRational, TerminatingAndRepeating) {
  EXPECT_EQ(to_string(Rat(2, 5)), "0.4");
  EXPECT_EQ(to_string(Rat(7, 20)), "0.35");
  EXPECT_EQ(to_string(Rat(-9, 10)), "-0.9");
  EXPECT_EQ(to_string(Rat(3)), "3");
  EXPECT_EQ(to_string(Rat(0)), "0");
  EXPECT_EQ(to_string(Rat(1, 1000)), "0.001");
  EXPECT_EQ(to_string(Rat(1, 3)), "1/3");
  EXPECT_EQ(to_string(Rat(-5, 6)), "-5/6");
}

// Exactness property: formatting then parsing is the identity on terminating
// decimals, and parsing then formatting is the identity on canonical text.
TEST(FormatRational, RoundTripProperty) {
  Rng rng(42);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto places = rng.below(7);
    BigInt denom = 1;
    for (std::uint64_t k = 0; k < places; ++k) denom *= 10;
    const auto mag = static_cast<long long>(rng.below(2'000'000));
    const Rat v(BigInt(rng.below(2) == 0 ? mag : -mag), denom);
    const std::string text = to_string(v);
    EXPECT_EQ(parse_decimal(text), v) << text;
    EXPECT_EQ(to_string(parse_decimal(text)), text);
  }
  for (int trial = 0; trial < 500; ++trial) {
    const Rat v(BigInt(rng.below(1000)), BigInt(rng.below(999) + 1));
    EXPECT_EQ(parse_rational(to_string(v)), v);
  }
}

TEST(ProblemInstance, RejectsInvalidData) {
  EXPECT_THROW(make({{"1.2"}}, {"0.5"}), DomainError);
  EXPECT_THROW(make({{"-0.1"}}, {"0.5"}), DomainError);
  EXPECT_THROW(make({{"0.5"}}, {"0"}), DomainError);
  EXPECT_THROW(make({{"0.5"}}, {"-1"}), DomainError);
  EXPECT_THROW(make({{"0.5", "0.5"}, {"0.5"}}, {"1", "1"}), DimensionError);
  EXPECT_THROW(make({{"0.5"}}, {"0.5", "0.5"}), DimensionError);
  EXPECT_THROW(ProblemInstance(Matrix{}, Vector{}), DimensionError);
  EXPECT_THROW(ProblemInstance(Matrix{Vector{}}, Vector{Rat(1)}), DimensionError);
  EXPECT_NO_THROW(make({{"0", "1"}}, {"1"}));
}

TEST(Evaluate, WorkedExample) {
  const auto p = worked_example();
  EXPECT_EQ(evaluate(p, V({"0.3", "0.6", "0.7"})), V({"1.4", "1.5"}));
  EXPECT_EQ(evaluate(p, V({"0", "0", "0"})), V({"0", "0"}));
  EXPECT_EQ(evaluate(p, V({"1", "1", "1"})), V({"1.5", "2.0"}));
  EXPECT_THROW(evaluate(p, V({"0.3", "0.6"})), DimensionError);
}

TEST(IsSolution, WorkedExample) {
  const auto p = worked_example();
  EXPECT_TRUE(is_solution(p, V({"0.3", "0.6", "0.7"})));
  EXPECT_FALSE(is_solution(p, V({"0", "0", "0"})));
  // (t, t, 1-t) at t = 0.55
  EXPECT_TRUE(is_solution(p, V({"0.55", "0.55", "0.45"})));
  EXPECT_THROW(is_solution(p, V({"0.3", "1.1", "0.7"})), DomainError);
  EXPECT_THROW(is_solution(p, V({"-0.1", "0.6", "0.7"})), DomainError);
}

TEST(Bounds, WorkedExample) {
  const auto bv = bounds(worked_example());
  EXPECT_EQ(bv.alpha_check, V({"0.3", "0.5", "0.4"}));
  EXPECT_EQ(bv.alpha_hat, V({"0.7", "0.6", "0.8"}));
}

TEST(Bounds, SingleEntry) {
  const auto bv = bounds(make({{"0.2"}}, {"0.5"}));
  EXPECT_EQ(bv.alpha_check, V({"0.5"}));
  EXPECT_EQ(bv.alpha_hat, V({"0.2"}));
}

TEST(Bounds, ClampedAtZero) {
  const auto bv = bounds(make({{"0.5", "0.5", "0.5"}}, {"0.2"}));
  EXPECT_EQ(bv.alpha_check, V({"0", "0", "0"}));
}

TEST(Precheck, Verdicts) {
  EXPECT_TRUE(precheck(worked_example()).possibly_solvable);

  const auto single = precheck(make({{"0.2"}}, {"0.5"}));
  EXPECT_FALSE(single.possibly_solvable);
  EXPECT_NE(single.reason.find("alpha_check[1] = 0.5 exceeds alpha_hat[1] = 0.2"), std::string::npos)
      << single.reason;

  const auto row_sum = precheck(make({{"0.5", "0.5"}}, {"1.1"}));
  EXPECT_FALSE(row_sum.possibly_solvable);
  EXPECT_NE(row_sum.reason.find("b[1] = 1.1 exceeds the row sum 1"), std::string::npos)
      << row_sum.reason;
}

TEST(Precheck, PossiblySolvableIsNotAGuarantee) {
  // Identical left-hand sides, different right-hand sides.
  EXPECT_TRUE(precheck(make({{"0.5", "0.5"}, {"0.5", "0.5"}}, {"1.0", "0.9"})).possibly_solvable);
}

// Monotonicity: x <= y implies A(.)x <= A(.)y componentwise.
TEST(CoreProperties, Monotonicity) {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto planted = random_solvable_instance(trial, 1 + rng.below(4), 1 + rng.below(4), Rat(1, 10));
    const auto& p = planted.instance;
    Vector x(p.cols()), y(p.cols());
    for (std::size_t j = 0; j < p.cols(); ++j) {
      x[j] = Rat(BigInt(rng.below(11)), BigInt(10));
      y[j] = x[j] + Rat(BigInt(rng.below(11)), BigInt(10)) * (1 - x[j]);
    }
    EXPECT_TRUE(leq(evaluate(p, x), evaluate(p, y)));
  }
}

// Every solution is bounded below by alpha_check.
TEST(CoreProperties, BoundSoundness) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto planted = random_solvable_instance(seed, 1 + seed % 4, 1 + (seed / 4) % 4, Rat(1, 10));
    const auto bv = bounds(planted.instance);
    EXPECT_TRUE(leq(bv.alpha_check, planted.planted));
    EXPECT_TRUE(precheck(planted.instance, bv).possibly_solvable);
  }
}

// Anything between two comparable solutions is a solution.
TEST(CoreProperties, OrderConvexity) {
  Rng rng(11);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto planted = random_solvable_instance(seed, 1 + seed % 4, 1 + (seed / 4) % 4, Rat(1, 10));
    const auto& p = planted.instance;
    const Vector lo = minimal_below(p, planted.planted);
    const Vector hi = maximal_above(p, planted.planted);
    for (int k = 0; k < 10; ++k) {
      Vector x(p.cols());
      for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = lo[j] + Rat(BigInt(rng.below(101)), BigInt(100)) * (hi[j] - lo[j]);
      }
      EXPECT_TRUE(is_solution(p, x)) << to_string(x);
    }
  }
}

}  // namespace
}  // namespace addmin

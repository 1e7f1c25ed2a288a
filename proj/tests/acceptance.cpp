// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "test_support.hpp"

#include <addmin/cli.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace addmin;
using testing::family;
using testing::Segment;
using testing::segments_of;
using testing::V;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

const std::string kData = ADDMIN_DATA_DIR;

int run_cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

ProblemInstance load(const std::string& name) { return load_instance_document(kData + "/" + name).to_instance(); }

// A family x(t) = p + t*d written out coordinatewise, evaluated at both ends.
Segment written_family(const std::function<Vector(const Rat&)>& x, const char* lo, bool lo_closed, const char* hi,
                     bool hi_closed) {
  return family(x(testing::R(lo)), lo_closed, x(testing::R(hi)), hi_closed);
}

Vector fam_a(const Rat& t) { return {t, Rat(9, 10) - t, 1 - t}; }  // (t, 0.9-t, 1-t)
Vector fam_b(const Rat& t) { return {1 - t, 1 - t, t}; }            // (1-t, 1-t, t)
Vector fam_c(const Rat& t) { return {t, Rat(1, 2), 1 - t}; }        // (t, 0.5, 1-t)

std::size_t nonempty_subsystems(const ProblemInstance& p, CellKind kind, std::size_t* total) {
  const auto grids = build_grids(p, bounds(p));
  const auto space = build_index_space(grids, kind);
  *total = space.total_count;
  std::size_t count = 0;
  for_each_index(space, [&](const IndexTuple& t) {
    auto sys = kind == CellKind::minimal ? build_minimal_system(p, grids, t) : build_maximal_system(p, grids, t);
    if (solve_box_system(sys)) ++count;
  });
  return count;
}

Outcome ac1() {
  Outcome o;
  const auto p = load("worked_example.json");
  const auto start = Clock::now();
  std::string text;
  const int code = run_cli({"min", kData + "/worked_example.json"}, &text);
  const auto cells = enumerate_minimal(p);
  const double secs = seconds_since(start);

  const std::vector<Segment> expected{written_family(fam_a, "0.3", true, "0.4", true),
                                      written_family(fam_b, "0.4", true, "0.5", true),
                                      written_family(fam_c, "0.4", true, "0.5", true)};
  o.require(code == 0, "min exited " + std::to_string(code));
  o.require(segments_of(cells) == expected, "minimal families differ from the expected three");
  const auto grids = build_grids(p, bounds(p));
  o.require(!solve_box_system(build_minimal_system(p, grids, {1, 1, 1})), "subsystem (1,1,1) is not empty");
  o.require(text.rfind("3 cells\n", 0) == 0, "text output does not list 3 cells");
  o.require(secs < 1.0, "runtime " + std::to_string(secs) + " s");
  o.detail = o.pass ? "3 closed families, (1,1,1) empty, " + std::to_string(secs) + " s" : o.detail;
  return o;
}

Outcome ac2() {
  Outcome o;
  const auto p = load("worked_example.json");
  const auto start = Clock::now();
  std::string text;
  const int code = run_cli({"max", kData + "/worked_example.json"}, &text);
  const auto cells = enumerate_maximal(p);
  const double secs = seconds_since(start);

  const std::vector<Segment> expected{written_family(fam_a, "0.3", false, "0.4", false),
                                      family(V({"0.3", "1", "0.7"}), true, V({"0.3", "1", "0.7"}), true),
                                      written_family(fam_b, "0.4", false, "0.5", false),
                                      written_family(fam_c, "0.4", true, "0.5", true),
                                      family(V({"0.6", "1", "0.4"}), true, V({"0.6", "1", "0.4"}), true)};
  o.require(code == 0, "max exited " + std::to_string(code));
  o.require(segments_of(cells) == expected, "maximal cells differ from the expected five");
  std::size_t total = 0;
  const std::size_t nonempty = nonempty_subsystems(p, CellKind::maximal, &total);
  o.require(total == 18 && nonempty == 5,
            std::to_string(nonempty) + " of " + std::to_string(total) + " subsystems nonempty");
  o.require(secs < 1.0, "runtime " + std::to_string(secs) + " s");
  o.detail = o.pass ? "2 open, 1 closed, 2 points; 13 of 18 empty, " + std::to_string(secs) + " s" : o.detail;
  return o;
}

Outcome ac3() {
  Outcome o;
  const auto p = load("worked_example.json");
  const auto d = describe_solution_set(p);
  o.require(d.solvable && d.minimal_cells.size() == 3 && d.maximal_cells.size() == 5, "cell counts");
  o.require(minimal_below(p, V({"0.6", "1", "0.4"})) == V({"0.6", "0.6", "0.4"}), "minimal_below((0.6,1,0.4))");
  o.require(maximal_above(p, V({"0.3", "0.6", "0.7"})) == V({"0.3", "1", "0.7"}), "maximal_above((0.3,0.6,0.7))");
  bool first = false, second = false;
  for (const auto& iv : anchored_intervals(p, d)) {
    first = first || (iv.lower == V({"0.3", "0.6", "0.7"}) && iv.upper == V({"0.3", "1", "0.7"}));
    second = second || (iv.lower == V({"0.6", "0.6", "0.4"}) && iv.upper == V({"0.6", "1", "0.4"}));
  }
  o.require(first && second, "order intervals [(0.3,0.6,0.7),(0.3,1,0.7)] and [(0.6,0.6,0.4),(0.6,1,0.4)] missing");
  std::string text;
  o.require(run_cli({"describe", kData + "/worked_example.json"}, &text) == 0, "describe failed");
  o.require(text.find("(0.6, 0.6, 0.4) <= x <= (0.6, 1, 0.4)") != std::string::npos, "describe text");
  if (o.pass) o.detail = "3 minimal, 5 maximal, both order intervals reproduced";
  return o;
}

bool in_any(const std::vector<SolutionCell>& cells, const Vector& x) {
  for (const auto& c : cells) {
    if (c.contains(x)) return true;
  }
  return false;
}

struct RandomRun {
  Outcome sandwich, agreement, soundness;
  std::size_t instances = 0, cells = 0, points = 0;
  double seconds = 0;
};

RandomRun random_suite(std::size_t count) {
  RandomRun r;
  const auto start = Clock::now();
  for (std::uint64_t seed = 1; seed <= count; ++seed) {
    Rng dims(seed * 7919);
    const auto pi = random_solvable_instance(seed, 1 + dims.below(4), 1 + dims.below(4), Rat(1, 10));
    const auto& p = pi.instance;
    const std::string tag = "seed " + std::to_string(seed) + ": ";
    ++r.instances;

    const auto min_cells = enumerate_minimal(p);
    const auto max_cells = enumerate_maximal(p);
    const Vector& x = pi.planted;
    const Vector lo = minimal_below(p, x);
    const Vector hi = maximal_above(p, x);
    r.sandwich.require(leq(lo, x) && leq(x, hi), tag + "sandwich order");
    r.sandwich.require(is_solution(p, lo) && is_solution(p, hi), tag + "constructed point is not a solution");
    r.sandwich.require(is_minimal(p, lo) && coordinate_decrease_oracle(p, lo), tag + "minimal_below not minimal");
    r.sandwich.require(is_maximal(p, hi) && coordinate_increase_oracle(p, hi), tag + "maximal_above not maximal");
    r.sandwich.require(in_any(min_cells, lo), tag + to_string(lo) + " in no minimal cell");
    r.sandwich.require(in_any(max_cells, hi), tag + to_string(hi) + " in no maximal cell");

    for (const auto* list : {&min_cells, &max_cells}) {
      for (const auto& c : *list) {
        ++r.cells;
        const bool min_kind = c.source.kind == CellKind::minimal;
        for (const Vector& y : sample_cell(c, seed, 5)) {
          ++r.points;
          bool in_box = true;
          for (const Rat& v : y) in_box = in_box && v >= 0 && v <= 1;
          r.soundness.require(in_box, tag + to_string(y) + " outside the unit box");
          if (!in_box) continue;
          const Vector residual = evaluate(p, y);
          r.soundness.require(residual == p.b(), tag + to_string(y) + " leaves a nonzero residual");
          if (residual != p.b()) continue;
          r.agreement.require(is_minimal(p, y) == coordinate_decrease_oracle(p, y),
                              tag + "is_minimal disagrees with the oracle at " + to_string(y));
          r.agreement.require(is_maximal(p, y) == coordinate_increase_oracle(p, y),
                              tag + "is_maximal disagrees with the oracle at " + to_string(y));
          r.soundness.require(min_kind ? is_minimal(p, y) : is_maximal(p, y),
                              tag + to_string(y) + " fails its kind's classifier");
        }
      }
    }
  }
  r.seconds = seconds_since(start);
  r.sandwich.require(r.seconds < 60.0, "runtime " + std::to_string(r.seconds) + " s");
  return r;
}

// b equal to the row sums: alpha_check is then the column maxima and a solution.
ProblemInstance row_sum_instance(std::uint64_t seed, std::size_t m, std::size_t n) {
  Rng rng(seed);
  Matrix a(m, Vector(n));
  Vector b(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(BigInt(rng.below(11)), BigInt(10));
    a[i][0] = Rat(BigInt(1 + rng.below(10)), BigInt(10));
    for (const Rat& v : a[i]) b[i] += v;
  }
  return ProblemInstance(a, b);
}

Outcome ac7() {
  Outcome o;
  std::vector<ProblemInstance> cases{testing::make({{"0.5"}}, {"0.5"}), testing::make({{"0.4", "0.6"}}, {"1.0"})};
  for (std::uint64_t seed = 0; seed < 50; ++seed) cases.push_back(row_sum_instance(seed, 1 + seed % 4, 1 + seed % 3));
  std::size_t alpha_cases = 0, ones_cases = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto p = random_solvable_instance(seed, 1 + seed % 4, 1 + (seed / 4) % 4, Rat(1, 10)).instance;
    if (is_solution(p, bounds(p).alpha_check) || is_solution(p, Vector(p.cols(), Rat(1)))) cases.push_back(p);
  }
  for (const auto& p : cases) {
    const Vector alpha_check = bounds(p).alpha_check;
    const Vector ones(p.cols(), Rat(1));
    if (is_solution(p, alpha_check)) {
      ++alpha_cases;
      const auto cells = enumerate_minimal(p);
      o.require(cells.size() == 1 && cells[0].dimension() == 0 && cells[0].origin == alpha_check,
                "minimal output is not the single cell alpha_check for " + to_string(p.b()));
    }
    if (is_solution(p, ones)) {
      ++ones_cases;
      const auto cells = enumerate_maximal(p);
      o.require(cells.size() == 1 && cells[0].dimension() == 0 && cells[0].origin == ones,
                "maximal output is not the single cell (1,...,1)");
    }
  }
  o.require(alpha_cases >= 50 && ones_cases >= 50, "too few shortcut instances");
  if (o.pass) {
    o.detail = std::to_string(alpha_cases) + " alpha_check and " + std::to_string(ones_cases) + " all-ones instances";
  }
  return o;
}

Outcome ac8() {
  Outcome o;
  for (const char* f : {"infeasible_single.json", "infeasible_row_sum.json"}) {
    std::string out;
    o.require(run_cli({"solvable", kData + "/" + f}, &out) == 1, std::string("solvable exit code on ") + f);
    o.require(out.find("precheck failed") != std::string::npos, std::string("no precheck reason for ") + f);
    const auto p = load(f);
    o.require(enumerate_minimal(p).empty() && enumerate_maximal(p).empty(), std::string("nonempty enumeration on ") + f);
    std::string min_text, max_text;
    run_cli({"min", kData + "/" + f}, &min_text);
    run_cli({"max", kData + "/" + f}, &max_text);
    o.require(min_text == "0 cells\n" && max_text == "0 cells\n", std::string("CLI lists cells for ") + f);
  }
  if (o.pass) o.detail = "A=[[0.2]],b=[0.5] and row-sum violation: exit 1, no cells";
  return o;
}

Outcome ac9() {
  Outcome o;
  const auto p = load("worked_example.json");
  const auto cells = enumerate_maximal(p);
  std::size_t limits = 0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].dimension() != 1) continue;
    const Segment s = testing::segment_of(cells[c]);
    for (const auto& [x, closed] : {std::pair{s.from, s.from_closed}, std::pair{s.to, s.to_closed}}) {
      if (closed) continue;
      ++limits;
      bool elsewhere = false;
      for (std::size_t other = 0; other < cells.size(); ++other) {
        if (other != c && cells[other].contains(x)) elsewhere = true;
      }
      const bool not_maximal = !is_solution(p, x) || !is_maximal(p, x);
      o.require(!cells[c].contains(x), to_string(x) + " is not excluded");
      o.require(not_maximal || elsewhere, "limit " + to_string(x) + " is maximal and in no other cell");
    }
  }
  o.require(limits == 4, std::to_string(limits) + " strict limits found, expected 4");
  o.require(!is_maximal(p, V({"0.3", "0.6", "0.7"})), "(0.3,0.6,0.7) passes is_maximal");
  o.require(check_strict_limits(p, cells).empty(), "oracle strict-limit check reports counterexamples");
  if (o.pass) o.detail = "4 excluded limits accounted for; (0.3,0.6,0.7) not maximal";
  return o;
}

}  // namespace

int main() {
  bool all = true;
  auto report = [&all](const char* id, const char* name, const Outcome& o) {
    all = all && o.pass;
    std::cout << id << " " << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.detail << std::endl;
  };

  report("AC1", "worked example, minimal set", ac1());
  report("AC2", "worked example, maximal set", ac2());
  report("AC3", "worked example, solution set description", ac3());

  RandomRun r = random_suite(1000);
  const std::string scale = std::to_string(r.instances) + " instances, " + std::to_string(r.cells) + " cells, " +
                            std::to_string(r.points) + " points";
  if (r.sandwich.pass) r.sandwich.detail = scale + ", " + std::to_string(r.seconds) + " s";
  if (r.agreement.pass) r.agreement.detail = "zero disagreements over " + std::to_string(r.points) + " points";
  if (r.soundness.pass) r.soundness.detail = "zero residual at every one of " + std::to_string(r.points) + " points";
  report("AC4", "sandwich property", r.sandwich);
  report("AC5", "classifier/oracle agreement", r.agreement);
  report("AC6", "soundness of cells", r.soundness);

  report("AC7", "shortcuts", ac7());
  report("AC8", "negative control", ac8());
  report("AC9", "strictness correctness", ac9());
  return all ? 0 : 1;
}

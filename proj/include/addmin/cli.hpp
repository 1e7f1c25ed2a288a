#pragma once

#include <addmin/enumeration.hpp>
#include <addmin/errors.hpp>
#include <addmin/io.hpp>
#include <addmin/oracle.hpp>
#include <addmin/problem.hpp>
#include <addmin/rational.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace addmin::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUnsolvable = 1,
  kInvalidInput = 2,
  kCapExceeded = 3,
  kCounterexample = 4,
};

/// Splits "0.3,1,0.7" into exact coordinates.
inline Vector parse_point(const std::string& text) {
  Vector out;
  std::string token;
  auto flush = [&] {
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    out.push_back(parse_rational(token));
    token.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return out;
}

namespace detail {

struct Settings {
  std::string format = "text";
  std::size_t max_cells = kDefaultMaxCells;
  std::string file;
  std::string x;
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::size_t m = 2;
  std::size_t n = 3;
  std::string step = "0.1";
};

inline void print_cells(std::ostream& out, const Settings& s, const std::vector<SolutionCell>& cells) {
  if (s.format == "json") {
    out << Json{{"cells", to_json(cells)}}.dump(2) << "\n";
    return;
  }
  out << cells.size() << " cells\n";
  for (const auto& c : cells) out << cell_line(c) << "\n";
}

inline int cmd_enumerate(std::ostream& out, const Settings& s, CellKind kind) {
  const ProblemInstance instance = load_instance_document(s.file).to_instance();
  const EnumerationOptions opts{s.max_cells, true};
  print_cells(out, s, kind == CellKind::minimal ? enumerate_minimal(instance, opts)
                                                : enumerate_maximal(instance, opts));
  return kSuccess;
}

inline int cmd_solvable(std::ostream& out, const Settings& s) {
  const ProblemInstance instance = load_instance_document(s.file).to_instance();
  const PrecheckVerdict verdict = precheck(instance);
  bool solvable = false;
  std::string reason;
  if (!verdict) {
    reason = "precheck failed: " + verdict.reason;
  } else {
    solvable = is_solvable(instance, {s.max_cells, true});
    if (!solvable) reason = "no candidate subsystem for a minimal solution is feasible";
  }
  if (s.format == "json") {
    Json j{{"solvable", solvable}};
    if (!solvable) j["reason"] = reason;
    out << j.dump(2) << "\n";
  } else {
    out << "solvable: " << (solvable ? "yes" : "no");
    if (!solvable) out << " (" << reason << ")";
    out << "\n";
  }
  return solvable ? kSuccess : kUnsolvable;
}

inline int cmd_check(std::ostream& out, const Settings& s) {
  const ProblemInstance instance = load_instance_document(s.file).to_instance();
  const Vector x = parse_point(s.x);
  const bool solution = is_solution(instance, x);
  const bool minimal = solution && is_minimal(instance, x);
  const bool maximal = solution && is_maximal(instance, x);
  if (s.format == "json") {
    Json j{{"point", to_json(x)}, {"solution", solution}};
    if (solution) {
      j["minimal"] = minimal;
      j["maximal"] = maximal;
    }
    out << j.dump(2) << "\n";
  } else if (solution) {
    out << "solution: yes; minimal: " << (minimal ? "yes" : "no")
        << "; maximal: " << (maximal ? "yes" : "no") << "\n";
  } else {
    out << "solution: no; minimal: n/a; maximal: n/a\n";
  }
  return kSuccess;
}

inline int cmd_bound(std::ostream& out, const Settings& s) {
  const ProblemInstance instance = load_instance_document(s.file).to_instance();
  const Vector x = parse_point(s.x);
  const Vector lo = minimal_below(instance, x);
  const Vector hi = maximal_above(instance, x);
  if (s.format == "json") {
    out << Json{{"point", to_json(x)}, {"minimal_below", to_json(lo)}, {"maximal_above", to_json(hi)}}
               .dump(2)
        << "\n";
  } else {
    out << "minimal_below: " << to_string(lo) << "\n"
        << "maximal_above: " << to_string(hi) << "\n";
  }
  return kSuccess;
}

inline int cmd_describe(std::ostream& out, const Settings& s) {
  const ProblemInstance instance = load_instance_document(s.file).to_instance();
  const SolutionSetDescription d = describe_solution_set(instance, {s.max_cells, true});
  if (s.format == "json") {
    out << description_json(instance, d).dump(2) << "\n";
  } else {
    out << description_text(instance, d);
  }
  return kSuccess;
}

inline int cmd_oracle(std::ostream& out, const Settings& s) {
  const ProblemInstance instance = load_instance_document(s.file).to_instance();
  const SolutionSetDescription d = describe_solution_set(instance, {s.max_cells, true});
  const VerificationReport r = verify_description(instance, d, s.seed, s.trials);
  if (s.format == "json") {
    out << report_json(r).dump(2) << "\n";
  } else {
    out << report_text(r);
  }
  return r.passed() ? kSuccess : kCounterexample;
}

inline int cmd_gen(std::ostream& out, const Settings& s) {
  const PlantedInstance p = random_solvable_instance(s.seed, s.m, s.n, parse_rational(s.step));
  InstanceDocument doc = to_document(p.instance, "random-" + std::to_string(s.seed),
                                     "generated with seed " + std::to_string(s.seed) + ", step " +
                                         s.step + "; planted holds a known solution");
  for (const Rat& v : p.planted) doc.planted.push_back(to_string(v));
  out << to_json(doc).dump(2) << "\n";
  return kSuccess;
}

}  // namespace detail

/// Runs one command line (without the program name) and returns the exit
/// code. Results go to `out`, diagnostics and usage text to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Settings s;
  CLI::App app{"Exact minimal/maximal solutions of addition-min fuzzy relation equations", "addmin"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--max-cells", s.max_cells, "Cap on enumerated index tuples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto with_file = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", s.file, "Instance JSON file")->required();
    return sub;
  };
  CLI::App* min_cmd = with_file("min", "Enumerate minimal solutions");
  CLI::App* max_cmd = with_file("max", "Enumerate maximal solutions");
  CLI::App* solvable_cmd = with_file("solvable", "Decide solvability (exit 1 if unsolvable)");
  CLI::App* check_cmd = with_file("check", "Classify a point");
  check_cmd->add_option("--x", s.x, "Point, comma separated")->required();
  CLI::App* bound_cmd = with_file("bound", "Minimal solution below and maximal solution above a solution");
  bound_cmd->add_option("--x", s.x, "Solution, comma separated")->required();
  CLI::App* describe_cmd = with_file("describe", "Full solution set description");
  CLI::App* oracle_cmd = with_file("oracle", "Verify the description against independent checks");
  oracle_cmd->add_option("--seed", s.seed, "Random seed")->capture_default_str();
  oracle_cmd->add_option("--trials", s.trials, "Random solutions to test")->capture_default_str();
  CLI::App* gen_cmd = app.add_subcommand("gen", "Emit a random solvable instance");
  gen_cmd->add_option("--seed", s.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--m", s.m, "Rows")->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--n", s.n, "Columns")->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--step", s.step, "Grid step, 1/N")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInvalidInput;
  }

  try {
    if (min_cmd->parsed()) return detail::cmd_enumerate(out, s, CellKind::minimal);
    if (max_cmd->parsed()) return detail::cmd_enumerate(out, s, CellKind::maximal);
    if (solvable_cmd->parsed()) return detail::cmd_solvable(out, s);
    if (check_cmd->parsed()) return detail::cmd_check(out, s);
    if (bound_cmd->parsed()) return detail::cmd_bound(out, s);
    if (describe_cmd->parsed()) return detail::cmd_describe(out, s);
    if (oracle_cmd->parsed()) return detail::cmd_oracle(out, s);
    if (gen_cmd->parsed()) return detail::cmd_gen(out, s);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  err << app.help();
  return kInvalidInput;
}

}  // namespace addmin::cli

#pragma once

#include <addmin/cell.hpp>
#include <addmin/enumeration.hpp>
#include <addmin/errors.hpp>
#include <addmin/fourier_motzkin.hpp>
#include <addmin/oracle.hpp>
#include <addmin/problem.hpp>
#include <addmin/rational.hpp>

#include <nlohmann/json.hpp>

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace addmin {

using Json = nlohmann::ordered_json;

/// An instance file as written: numerals kept as their source text.
///
///   {"name": "...", "description": "...", "A": [["0.4", 0.6], ...], "b": [1.4, "1.5"]}
///
/// Numerals may be JSON strings or JSON numbers. Numbers are captured as
/// their raw token text, so 0.4 is read as exactly 2/5. Strings may also
/// hold fractions such as "1/3".
struct InstanceDocument {
  std::vector<std::vector<std::string>> a;
  std::vector<std::string> b;
  std::string name;
  std::string description;
  std::vector<std::string> planted;  // optional, written by the generator

  [[nodiscard]] ProblemInstance to_instance() const {
    Matrix am;
    am.reserve(a.size());
    for (const auto& row : a) {
      Vector r;
      r.reserve(row.size());
      for (const auto& tok : row) r.push_back(parse_rational(tok));
      am.push_back(std::move(r));
    }
    Vector bv;
    bv.reserve(b.size());
    for (const auto& tok : b) bv.push_back(parse_rational(tok));
    return ProblemInstance(std::move(am), std::move(bv));
  }
};

namespace detail {

// SAX handler that builds a DOM in which every number is replaced by a
// string holding its exact source token.
class RawNumberSax : public nlohmann::json_sax<Json> {
 public:
  bool null() override { return put(nullptr); }
  bool boolean(bool v) override { return put(v); }
  bool number_integer(number_integer_t v) override { return put(std::to_string(v)); }
  bool number_unsigned(number_unsigned_t v) override { return put(std::to_string(v)); }
  bool number_float(number_float_t, const string_t& s) override { return put(s); }
  bool string(string_t& s) override { return put(s); }
  bool binary(binary_t&) override { return false; }
  bool start_object(std::size_t) override {
    stack_.push_back(slot(Json::object()));
    return true;
  }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool end_object() override {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) override {
    stack_.push_back(slot(Json::array()));
    return true;
  }
  bool end_array() override {
    stack_.pop_back();
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) override {
    throw ParseError(std::string("invalid JSON: ") + ex.what());
  }

  Json take() { return std::move(root_); }

 private:
  Json* slot(Json value) {
    if (stack_.empty()) {
      root_ = std::move(value);
      return &root_;
    }
    Json& top = *stack_.back();
    if (top.is_array()) {
      top.push_back(std::move(value));
      return &top.back();
    }
    top[key_] = std::move(value);
    return &top[key_];
  }
  bool put(Json value) {
    slot(std::move(value));
    return true;
  }

  Json root_;
  std::vector<Json*> stack_;
  std::string key_;
};

inline std::string numeral_token(const Json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + " must be a numeral, got " + v.dump());
  const std::string tok = v.get<std::string>();
  parse_rational(tok);  // validate eagerly so errors name the location
  return tok;
}

}  // namespace detail

/// Parses JSON text keeping numbers as raw strings.
inline Json parse_json_exact(const std::string& text) {
  detail::RawNumberSax sax;
  Json::sax_parse(text, &sax);
  return sax.take();
}

inline InstanceDocument parse_instance_document(const std::string& text) {
  const Json doc = parse_json_exact(text);
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
  if (!doc.contains("A") || !doc.contains("b")) {
    throw ParseError("instance document needs keys \"A\" and \"b\"");
  }
  InstanceDocument out;
  const Json& a = doc.at("A");
  if (!a.is_array()) throw ParseError("\"A\" must be an array of rows");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_array()) throw ParseError("row " + std::to_string(i + 1) + " of A must be an array");
    std::vector<std::string> row;
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      row.push_back(detail::numeral_token(
          a[i][j], "A[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]"));
    }
    out.a.push_back(std::move(row));
  }
  const Json& b = doc.at("b");
  if (!b.is_array()) throw ParseError("\"b\" must be an array");
  for (std::size_t i = 0; i < b.size(); ++i) {
    out.b.push_back(detail::numeral_token(b[i], "b[" + std::to_string(i + 1) + "]"));
  }
  if (doc.contains("name") && doc.at("name").is_string()) out.name = doc.at("name").get<std::string>();
  if (doc.contains("description") && doc.at("description").is_string()) {
    out.description = doc.at("description").get<std::string>();
  }
  if (doc.contains("planted") && doc.at("planted").is_array()) {
    for (const auto& v : doc.at("planted")) out.planted.push_back(detail::numeral_token(v, "planted"));
  }
  return out;
}

inline InstanceDocument load_instance_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance_document(buf.str());
}

inline InstanceDocument to_document(const ProblemInstance& instance, std::string name = {},
                                    std::string description = {}) {
  InstanceDocument doc;
  doc.name = std::move(name);
  doc.description = std::move(description);
  for (const auto& row : instance.a()) {
    std::vector<std::string> r;
    for (const auto& v : row) r.push_back(to_string(v));
    doc.a.push_back(std::move(r));
  }
  for (const auto& v : instance.b()) doc.b.push_back(to_string(v));
  return doc;
}

inline Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

inline Json to_json(const InstanceDocument& doc) {
  Json out = Json::object();
  if (!doc.name.empty()) out["name"] = doc.name;
  if (!doc.description.empty()) out["description"] = doc.description;
  out["A"] = doc.a;
  out["b"] = doc.b;
  if (!doc.planted.empty()) out["planted"] = doc.planted;
  return out;
}

inline Json to_json(const SolutionCell& cell) {
  Json index = Json::array();
  for (SegmentIndex k : cell.source.index) {
    if (k == kInfinity) {
      index.push_back("inf");
    } else {
      index.push_back(k);
    }
  }
  Json directions = Json::array();
  for (const auto& row : cell.directions) directions.push_back(to_json(row));
  Json constraints = Json::array();
  for (const auto& c : cell.param_constraints) {
    constraints.push_back(Json{{"coeffs", to_json(c.coeffs)},
                               {"rhs", to_string(c.rhs)},
                               {"rel", c.strict ? "lt" : "le"}});
  }
  return Json{{"source", Json{{"kind", to_string(cell.source.kind)}, {"index", index}}},
              {"origin", to_json(cell.origin)},
              {"directions", directions},
              {"constraints", constraints},
              {"witness", to_json(cell.witness)}};
}

inline Json to_json(const std::vector<SolutionCell>& cells) {
  Json out = Json::array();
  for (const auto& c : cells) out.push_back(to_json(c));
  return out;
}

/// Inverse of to_json(const SolutionCell&).
inline SolutionCell cell_from_json(const Json& j) {
  auto vec = [](const Json& arr) {
    Vector v;
    for (const auto& x : arr) v.push_back(parse_rational(x.get<std::string>()));
    return v;
  };
  try {
    SolutionCell cell;
    const Json& src = j.at("source");
    cell.source.kind = src.at("kind").get<std::string>() == "max" ? CellKind::maximal : CellKind::minimal;
    for (const auto& k : src.at("index")) {
      if (k.is_number()) {
        cell.source.index.push_back(k.get<SegmentIndex>());
      } else {
        const std::string tok = k.get<std::string>();
        cell.source.index.push_back(tok == "inf" ? kInfinity : std::stoull(tok));
      }
    }
    cell.origin = vec(j.at("origin"));
    for (const auto& row : j.at("directions")) cell.directions.push_back(vec(row));
    for (const auto& c : j.at("constraints")) {
      cell.param_constraints.push_back(
          {vec(c.at("coeffs")), parse_rational(c.at("rhs").get<std::string>()),
           c.at("rel").get<std::string>() == "lt"});
    }
    cell.witness = vec(j.at("witness"));
    return cell;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed cell: ") + ex.what());
  }
}

namespace detail {

inline std::string param_name(std::size_t k, std::size_t d) {
  return d == 1 ? std::string("t") : "t" + std::to_string(k + 1);
}

inline std::string coefficient_text(const Rat& magnitude) {
  if (magnitude == 1) return "";
  const std::string s = to_string(magnitude);
  return s.find('/') == std::string::npos ? s : "(" + s + ")";
}

}  // namespace detail

/// Renders c + sum_k coeffs[k] * t_k, e.g. "0.9-t" or "t1+2t2".
inline std::string affine_text(const Rat& constant, const Vector& coeffs) {
  std::string out;
  if (constant != 0) out = to_string(constant);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Rat& c = coeffs[k];
    if (c == 0) continue;
    const Rat magnitude = c < 0 ? Rat(-c) : c;
    if (c < 0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    out += detail::coefficient_text(magnitude) + detail::param_name(k, coeffs.size());
  }
  return out.empty() ? "0" : out;
}

/// Text form of a cell in parametric notation:
///   d = 0: "(0.3, 1, 0.7)"
///   d = 1: "(t, 0.9-t, 1-t), t ∈ [0.3, 0.4]"
///   d > 1: "(t1, t2, 1-t1-t2), where -t1 <= -0.3, ..."
inline std::string cell_text(const SolutionCell& cell) {
  const std::size_t d = cell.dimension();
  std::string out = "(";
  for (std::size_t j = 0; j < cell.origin.size(); ++j) {
    if (j > 0) out += ", ";
    out += d == 0 ? to_string(cell.origin[j]) : affine_text(cell.origin[j], cell.directions[j]);
  }
  out += ")";
  if (d == 0) return out;
  if (d == 1) {
    const Interval iv = fm::bounds_on_last(cell.param_constraints, {});
    out += ", t ∈ ";
    out += iv.lower ? (iv.lower_strict ? "(" : "[") + to_string(*iv.lower) : "(-inf";
    out += ", ";
    out += iv.upper ? to_string(*iv.upper) + (iv.upper_strict ? ")" : "]") : "inf)";
    return out;
  }
  out += ", where ";
  for (std::size_t c = 0; c < cell.param_constraints.size(); ++c) {
    const auto& pc = cell.param_constraints[c];
    if (c > 0) out += ", ";
    out += affine_text(0, pc.coeffs) + (pc.strict ? " < " : " <= ") + to_string(pc.rhs);
  }
  return out;
}

inline std::string cell_line(const SolutionCell& cell) {
  std::string tag = to_string(cell.source.kind);
  tag += cell.source.index.empty() ? std::string(" shortcut") : " " + to_string(cell.source.index);
  return "[" + tag + "] " + cell_text(cell);
}

/// Order intervals anchored at the cell witnesses: [minimal_below(w), w] for
/// each maximal cell and [w, maximal_above(w)] for each minimal cell.
/// Single-point intervals (witnesses that are both minimal and maximal) are
/// left out.
struct AnchoredInterval {
  Vector lower;
  Vector upper;
  std::string anchor;
};

inline std::vector<AnchoredInterval> anchored_intervals(const ProblemInstance& instance,
                                                        const SolutionSetDescription& d) {
  std::vector<AnchoredInterval> out;
  auto add = [&out](Vector lo, Vector hi, std::string anchor) {
    if (lo != hi) out.push_back({std::move(lo), std::move(hi), std::move(anchor)});
  };
  for (const auto& c : d.minimal_cells) {
    add(c.witness, maximal_above(instance, c.witness), std::string("min ") + to_string(c.source.index));
  }
  for (const auto& c : d.maximal_cells) {
    add(minimal_below(instance, c.witness), c.witness, std::string("max ") + to_string(c.source.index));
  }
  return out;
}

inline std::string description_text(const ProblemInstance& instance,
                                    const SolutionSetDescription& d) {
  std::ostringstream os;
  os << "solvable: " << (d.solvable ? "yes" : "no") << "\n";
  if (!d.precheck) os << "precheck: infeasible: " << d.precheck.reason << "\n";
  if (d.alpha_check_is_solution) os << "note: alpha_check is a solution, so it is the unique minimal solution\n";
  if (d.all_ones_is_solution) os << "note: (1, ..., 1) is a solution, so it is the unique maximal solution\n";
  os << "minimal solutions (" << d.minimal_cells.size() << " cells):\n";
  for (const auto& c : d.minimal_cells) os << "  " << cell_line(c) << "\n";
  os << "maximal solutions (" << d.maximal_cells.size() << " cells):\n";
  for (const auto& c : d.maximal_cells) os << "  " << cell_line(c) << "\n";
  if (d.solvable) {
    os << "solution set: union of {x | lo <= x <= hi} over minimal lo and maximal hi\n";
    os << "anchored order intervals:\n";
    for (const auto& iv : anchored_intervals(instance, d)) {
      os << "  " << to_string(iv.lower) << " <= x <= " << to_string(iv.upper) << "  (" << iv.anchor
         << ")\n";
    }
  }
  return os.str();
}

inline Json description_json(const ProblemInstance& instance, const SolutionSetDescription& d) {
  Json intervals = Json::array();
  if (d.solvable) {
    for (const auto& iv : anchored_intervals(instance, d)) {
      intervals.push_back(
          Json{{"lower", to_json(iv.lower)}, {"upper", to_json(iv.upper)}, {"anchor", iv.anchor}});
    }
  }
  Json shortcut = Json::array();
  if (d.alpha_check_is_solution) shortcut.push_back("alpha_check_is_solution");
  if (d.all_ones_is_solution) shortcut.push_back("all_ones_is_solution");
  Json out{{"solvable", d.solvable},
           {"shortcut", shortcut},
           {"minimal_cells", to_json(d.minimal_cells)},
           {"maximal_cells", to_json(d.maximal_cells)},
           {"intervals", intervals}};
  if (!d.precheck) out["precheck"] = d.precheck.reason;
  return out;
}

inline std::string report_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "cells checked: " << r.cells_checked << "\n"
     << "points checked: " << r.points_checked << "\n"
     << "trials: " << r.trials_run << "\n"
     << "non-solutions checked: " << r.non_solutions_checked << "\n"
     << "counterexamples: " << r.counterexamples.size() << "\n";
  for (const auto& c : r.counterexamples) {
    os << "  [" << c.check << "] " << to_string(c.point) << ": " << c.detail << "\n";
  }
  os << "result: " << (r.passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

inline Json report_json(const VerificationReport& r) {
  Json ces = Json::array();
  for (const auto& c : r.counterexamples) {
    ces.push_back(Json{{"check", c.check}, {"point", to_json(c.point)}, {"detail", c.detail}});
  }
  return Json{{"cells_checked", r.cells_checked},
              {"points_checked", r.points_checked},
              {"trials", r.trials_run},
              {"non_solutions_checked", r.non_solutions_checked},
              {"counterexamples", ces},
              {"passed", r.passed()}};
}

}  // namespace addmin

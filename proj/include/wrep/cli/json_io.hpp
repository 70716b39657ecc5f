// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file json_io.hpp
 * @brief Problem files, HRep JSON and CSV helpers.
 *
 * JSON objects are emitted with sorted keys and doubles as %.17g so that
 * identical inputs give identical bytes.
 */

#pragma once

#include "wrep/constraints/bounds.hpp"
#include "wrep/errors.hpp"
#include "wrep/fockoracle/audit.hpp"
#include "wrep/polytope.hpp"
#include "wrep/spectra.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

namespace wrep {

using Json = nlohmann::json;

/// Shortest-safe round-trip text for a double: %.17g, with -0 printed as 0.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) x = 0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline void write_json(std::ostream& os, const Json& j, int indent, int depth);

inline void newline(std::ostream& os, int indent, int depth) {
  if (indent < 0) return;
  os << '\n' << std::string(static_cast<std::size_t>(indent * depth), ' ');
}

/// Like Json::dump but doubles go through format_double. Non-finite
/// numbers become null, as JSON has no spelling for them.
inline void write_json(std::ostream& os, const Json& j, int indent, int depth) {
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        newline(os, indent, depth + 1);
        os << Json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        write_json(os, it.value(), indent, depth + 1);
      }
      newline(os, indent, depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      // Numeric arrays stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << (flat ? ", " : ",");
        if (!flat) newline(os, indent, depth + 1);
        write_json(os, j[i], indent, depth + 1);
      }
      if (!flat && !j.empty()) newline(os, indent, depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace detail

inline std::string dump_json(const Json& j, int indent = 2) {
  std::ostringstream os;
  detail::write_json(os, j, indent, 0);
  os << '\n';
  return os.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + ": malformed JSON (" + e.what() + ")");
  }
}

// ---------------------------------------------------------------- HRep

/// Rows sorted by label, then by coefficients.
inline HRep canonical(HRep h) {
  std::stable_sort(h.rows.begin(), h.rows.end(), [](const auto& a, const auto& b) {
    if (a.label != b.label) return a.label < b.label;
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.rhs < b.rhs;
  });
  return h;
}

inline Json hrep_to_json(const HRep& h) {
  Json rows = Json::array();
  for (const auto& r : canonical(h).rows) rows.push_back(Json{{"a", r.coeffs}, {"b", r.rhs}, {"label", r.label}});
  return Json{{"d", h.dimension}, {"rows", rows}, {"sum", h.sum}};
}

inline std::string hrep_json_text(const HRep& h) { return dump_json(hrep_to_json(h)); }

namespace detail {

inline void require_keys(const Json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw InputError(what + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw InputError(what + ": unknown key '" + it.key() + "'");
  }
}

inline std::vector<double> number_array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array of numbers");
  std::vector<double> v;
  for (const auto& e : j) {
    if (!e.is_number()) throw InputError(what + ": expected an array of numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

template <class T>
T required(const Json& j, const std::string& key, const std::string& what) {
  if (!j.contains(key)) throw InputError(what + ": missing key '" + key + "'");
  if constexpr (std::is_integral_v<T>) {
    if (!j.at(key).is_number_integer()) throw InputError(what + ": key '" + key + "' must be an integer");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw InputError(what + ": key '" + key + "' has the wrong type");
  }
}

}  // namespace detail

inline HRep hrep_from_json(const Json& j) {
  detail::require_keys(j, {"d", "rows", "sum"}, "HRep");
  HRep h;
  const int d = detail::required<int>(j, "d", "HRep");
  if (d < 1) throw InputError("HRep: 'd' must be positive");
  h.dimension = static_cast<std::size_t>(d);
  h.sum = detail::required<double>(j, "sum", "HRep");
  if (!j.contains("rows") || !j["rows"].is_array()) throw InputError("HRep: 'rows' must be an array");
  for (const auto& r : j["rows"]) {
    detail::require_keys(r, {"a", "b", "label"}, "HRep row");
    if (!r.contains("a")) throw InputError("HRep row: missing key 'a'");
    h.add(detail::number_array(r["a"], "HRep row 'a'"), detail::required<double>(r, "b", "HRep row"),
          detail::required<std::string>(r, "label", "HRep row"));
  }
  return h;
}

// ---------------------------------------------------------------- problems

struct ProblemFile {
  EnsembleSpec spec;
  ChiVariant chi = ChiVariant::validated;
  bool chi_given = false;

  double w1() const { return spec.rank() == 1 ? 1.0 : spec.weights[0]; }
  std::optional<OccupationVector> lambda1() const {
    if (spec.has_fixed(1)) return spec.fixed(1);
    return std::nullopt;
  }
  const OccupationVector& require_lambda1(const std::string& who) const {
    if (!spec.has_fixed(1)) throw InputError(who + ": the problem has no fixed spectrum for state 1");
    return spec.fixed(1);
  }
};

inline ProblemFile parse_problem(const Json& j) {
  detail::require_keys(j, {"N", "d", "weights", "fixed", "chi_variant"}, "problem");
  RawSpec raw;
  raw.N = detail::required<int>(j, "N", "problem");
  raw.d = detail::required<int>(j, "d", "problem");
  if (!j.contains("weights")) throw InputError("problem: missing key 'weights'");
  raw.weights = detail::number_array(j["weights"], "problem 'weights'");
  if (j.contains("fixed")) {
    const auto& f = j["fixed"];
    if (!f.is_object()) throw InputError("problem: 'fixed' must map state indices to spectra");
    for (auto it = f.begin(); it != f.end(); ++it) {
      int index = 0;
      std::size_t used = 0;
      try {
        index = std::stoi(it.key(), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != it.key().size()) throw InputError("problem: fixed index '" + it.key() + "' is not an integer");
      raw.fixed[index] = detail::number_array(it.value(), "problem fixed spectrum");
    }
  }
  ProblemFile p;
  p.spec = validate_spec(raw);
  if (j.contains("chi_variant")) {
    if (!j["chi_variant"].is_string()) throw InputError("problem: 'chi_variant' must be a string");
    p.chi = parse_chi_variant(j["chi_variant"].get<std::string>());
    p.chi_given = true;
  }
  return p;
}

inline ProblemFile parse_problem_text(const std::string& text) { return parse_problem(parse_json(text, "problem")); }

inline Json problem_to_json(const ProblemFile& p) {
  Json fixed = Json::object();
  for (const auto& [i, v] : p.spec.fixed_spectra) fixed[std::to_string(i)] = v.sorted();
  Json j{{"N", p.spec.N}, {"d", p.spec.d}, {"weights", p.spec.weights.entries()}, {"chi_variant", to_string(p.chi)}};
  if (!fixed.empty()) j["fixed"] = fixed;
  return j;
}

/// "[0.1, 0.2]", "0.1,0.2" or whitespace-separated numbers.
inline std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    auto j = parse_json(text, what);
    if (j.is_object()) {
      detail::require_keys(j, {"spectrum"}, what);
      if (!j.contains("spectrum")) throw InputError(what + ": missing key 'spectrum'");
      j = j["spectrum"];
    }
    return detail::number_array(j, what);
  }
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<double> v;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(x)) throw InputError(what + ": '" + tok + "' is not a finite number");
    v.push_back(x);
  }
  if (v.empty()) throw InputError(what + ": no numbers given");
  return v;
}

// ---------------------------------------------------------------- reports

inline Json verdict_to_json(const MembershipVerdict<double>& v, const std::string& body) {
  Json viol = Json::array();
  for (const auto& r : v.violations) viol.push_back(Json{{"label", r.label}, {"margin", r.margin}});
  return Json{{"body", body},
              {"member", v.member},
              {"sorted_point", v.sorted_point},
              {"sum_error", v.sum_error},
              {"violations", viol}};
}

inline Json residual_report_to_json(const ResidualBoundReport& r) {
  Json j{{"k", r.k},
         {"lower_trivial", r.lower_trivial},
         {"lower_refined", r.lower_refined},
         {"upper_trivial", r.upper_trivial},
         {"upper_refined", r.upper_refined},
         {"lower", r.lower()},
         {"upper", r.upper()},
         {"active", r.active},
         {"chi_variant", to_string(r.chi_variant)}};
  j["residual"] = r.residual_value ? Json(*r.residual_value) : Json(nullptr);
  return j;
}

inline Json audit_to_json(const AuditSummary& s) {
  Json fam = Json::object();
  for (const auto& [name, f] : s.families) {
    fam[name] = Json{{"checked", f.checked},
                     {"violations", f.violations},
                     {"worst_margin", f.worst_margin},
                     {"worst_row", f.worst_row},
                     {"gates_exit", f.gates}};
  }
  Json j{{"N", s.N},
         {"d", s.d},
         {"weights", s.weights},
         {"samples", s.samples},
         {"seed", s.seed},
         {"families", fam},
         {"clean", s.clean()},
         {"max_prefix_N", s.max_prefix_N},
         {"prefix_N_target", s.prefix_N_target},
         {"max_deviation_from_lambda1", s.max_deviation_from_lambda1},
         {"notes", s.notes}};
  if (std::isfinite(s.max_prefix_N_refined)) j["max_prefix_N_refined"] = s.max_prefix_N_refined;
  return j;
}

// ---------------------------------------------------------------- CSV

inline std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
    if (!quote) {
      out += cells[i];
      continue;
    }
    out += '"';
    for (char c : cells[i]) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  out += '\n';
  return out;
}

}  // namespace wrep

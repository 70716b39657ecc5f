// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file commands.hpp
 * @brief The wrep subcommands and the argument front end.
 *
 * Exit codes: 0 member or clean, 1 violation found, 2 input error,
 * 3 capability limit, 4 internal invariant failure.
 */

#pragma once

#include "wrep/cli/json_io.hpp"
#include "wrep/constraints/bounds.hpp"
#include "wrep/constraints/horn.hpp"
#include "wrep/constraints/sigma_w.hpp"
#include "wrep/constraints/vertex.hpp"
#include "wrep/errors.hpp"
#include "wrep/fockoracle/audit.hpp"
#include "wrep/fockoracle/hubbard.hpp"
#include "wrep/geometry2d.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace wrep {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitInput = 2, kExitCapability = 3, kExitInternal = 4 };

struct CommonOptions {
  std::optional<ChiVariant> chi;  // overrides the problem's chi_variant
  double tol = kTolerance;
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  unsigned workers = 0;
};

inline ChiVariant effective_chi(const ProblemFile& p, const CommonOptions& o) {
  return o.chi ? *o.chi : p.chi;
}

// ---------------------------------------------------------------- gen

inline const std::vector<std::string>& body_names() {
  static const std::vector<std::string> names{"sigma_w", "lambda_h", "lambda_down", "xi", "sigma_w_lambda1"};
  return names;
}

namespace detail {

inline void require_pair(const ProblemFile& p, const std::string& who) {
  if (p.spec.rank() != 2) {
    const bool beyond = p.spec.rank() > 2;
    const std::string msg = who + ": needs a two-state ensemble (r = 2), got r = " + std::to_string(p.spec.rank());
    if (beyond) throw CapabilityError(msg);
    throw InputError(msg);
  }
}

}  // namespace detail

inline HRep build_body(const ProblemFile& p, const std::string& which, const CommonOptions& o) {
  const int N = p.spec.N, d = p.spec.d;
  if (which == "sigma_w") return sigma_w_hrep(N, d, p.spec.weights);
  if (which == "lambda_h" || which == "lambda_down") {
    if (d > 3) throw CapabilityError(which + ": d = " + std::to_string(d) + " exceeds the limit d <= 3");
    detail::require_pair(p, which);
    const auto& l1 = p.require_lambda1(which);
    return which == "lambda_h" ? lambda_h_hrep(p.w1(), l1, N, d) : lambda_down_hrep(p.w1(), l1, N, d);
  }
  if (which == "xi") {
    detail::require_pair(p, which);
    return xi_hrep(p.w1(), N, d, p.require_lambda1(which), effective_chi(p, o)).hrep;
  }
  if (which == "sigma_w_lambda1") {
    detail::require_pair(p, which);
    return sigma_w_lambda1_hrep(p.w1(), p.require_lambda1(which), N);
  }
  throw InputError("unknown body '" + which + "' (expected sigma_w, lambda_h, lambda_down, xi or sigma_w_lambda1)");
}

inline int cmd_gen(const ProblemFile& p, const std::string& which, const CommonOptions& o, std::ostream& out) {
  out << hrep_json_text(build_body(p, which, o));
  return kExitOk;
}

// ---------------------------------------------------------------- check

/// Most refined body the problem supports.
inline std::string default_body(const ProblemFile& p) {
  if (p.spec.rank() == 2 && p.spec.has_fixed(1)) return p.spec.d <= 3 ? "lambda_down" : "xi";
  return "sigma_w";
}

struct CheckRequest {
  std::vector<double> spectrum;
  std::string body;                 // empty: default_body
  std::optional<HRep> hrep;         // explicit body from a file
  bool lattice = false;
};

inline int cmd_check(const std::optional<ProblemFile>& p, const CheckRequest& req, const CommonOptions& o,
                     std::ostream& out) {
  MembershipVerdict<double> v;
  std::string body;
  if (req.lattice) {
    if (!p) throw InputError("check --lattice: a problem file is required");
    detail::require_pair(*p, "check --lattice");
    const auto n = OccupationVector::make(req.spectrum, p->spec.N);
    v = lattice_occupation_check(n, p->w1(), p->require_lambda1("check --lattice"), p->spec.N, o.tol);
    body = "lattice";
  } else if (req.hrep) {
    if (req.spectrum.size() != req.hrep->dimension) throw InputError("check: spectrum length differs from the HRep d");
    v = membership(*req.hrep, req.spectrum, o.tol);
    body = "hrep";
  } else {
    if (!p) throw InputError("check: a problem file or --hrep is required");
    if (static_cast<int>(req.spectrum.size()) != p->spec.d) {
      throw InputError("check: spectrum has " + std::to_string(req.spectrum.size()) + " entries, expected d = " +
                       std::to_string(p->spec.d));
    }
    body = req.body.empty() ? default_body(*p) : req.body;
    v = membership(build_body(*p, body, o), req.spectrum, o.tol);
  }
  out << dump_json(verdict_to_json(v, body));
  return v.member ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------- scan

struct ScanConfig {
  std::string kind = "hubbard";  // hubbard | w
  std::vector<double> grid;
  double w = 0.75;
  int sites = 2;
  std::uint64_t seed = 1;
};

/// "a:b:n" (n evenly spaced points) or a comma-separated list.
inline std::vector<double> parse_grid(const std::string& text) {
  if (std::count(text.begin(), text.end(), ':') == 2) {
    const auto a = text.find(':'), b = text.find(':', a + 1);
    const auto lo = parse_number_list(text.substr(0, a), "grid");
    const auto hi = parse_number_list(text.substr(a + 1, b - a - 1), "grid");
    const auto n = parse_number_list(text.substr(b + 1), "grid");
    if (lo.size() != 1 || hi.size() != 1 || n.size() != 1 || n[0] < 1 || n[0] != std::floor(n[0])) {
      throw InputError("grid: expected start:stop:count with integer count >= 1");
    }
    const int count = static_cast<int>(n[0]);
    std::vector<double> g;
    for (int i = 0; i < count; ++i) g.push_back(count == 1 ? lo[0] : lo[0] + (hi[0] - lo[0]) * i / (count - 1));
    return g;
  }
  return parse_number_list(text, "grid");
}

inline std::vector<std::string> scan_header() {
  return {"param", "R_N", "lower_triv", "lower_refined", "upper_triv", "upper_refined", "crossing"};
}

inline std::vector<std::string> scan_row(double param, const ResidualBoundReport& r, bool crossing) {
  return {format_double(param),
          r.residual_value ? format_double(*r.residual_value) : "nan",
          format_double(r.lower_trivial),
          format_double(r.lower_refined),
          format_double(r.upper_trivial),
          format_double(r.upper_refined),
          crossing ? "true" : "false"};
}

inline int cmd_scan(const ScanConfig& cfg, const std::optional<ProblemFile>& p, const CommonOptions& o,
                    std::ostream& out) {
  if (cfg.grid.empty()) throw InputError("scan: empty grid");
  out << csv_line(scan_header());
  if (cfg.kind == "hubbard") {
    const ChiVariant chi = o.chi.value_or(ChiVariant::validated);
    for (double U : cfg.grid) {
      if (!std::isfinite(U)) throw InputError("scan: non-finite grid value");
    }
    for (const auto& pt : toy_lattice_scan(cfg.sites, cfg.grid, cfg.w, 1.0, o.workers)) {
      out << csv_line(scan_row(pt.U, chi == ChiVariant::paper ? pt.paper : pt.validated, pt.crossing));
    }
    return kExitOk;
  }
  if (cfg.kind == "w") {
    if (!p) throw InputError("scan --kind w: a problem file with a fixed spectrum is required");
    const auto& l1 = p->require_lambda1("scan");
    const int N = p->spec.N, d = p->spec.d;
    for (double w : cfg.grid) {
      if (!(w >= 0.5 && w <= 1.0)) throw InputError("scan: w = " + format_double(w) + " outside [0.5, 1]");
      out << csv_line(scan_row(w, residual_bounds(w, N, d, l1, N, effective_chi(*p, o)), crossing_condition(w, N, l1)));
    }
    return kExitOk;
  }
  throw InputError("scan: unknown kind '" + cfg.kind + "' (expected hubbard or w)");
}

// ---------------------------------------------------------------- audit

inline int cmd_audit(const ProblemFile& p, const CommonOptions& o, int refine_iterations, std::ostream& out) {
  AuditOptions opt;
  opt.samples = o.samples;
  opt.seed = o.seed;
  opt.tol = o.tol;
  opt.workers = o.workers;
  opt.refine_iterations = refine_iterations;
  const auto s = audit_problem(p.spec.N, p.spec.d, p.spec.weights, p.lambda1(), opt);
  out << dump_json(audit_to_json(s));
  return s.clean() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------- figure

struct FigureBody {
  std::string name;
  Polygon polygon;
};

inline std::vector<FigureBody> figure_bodies(const std::string& which, const ProblemFile& p, const CommonOptions& o) {
  if (p.spec.d != 3) throw CapabilityError("figure: only d = 3 can be drawn in the (lambda1, lambda2) plane");
  const int N = p.spec.N;
  std::vector<FigureBody> out;
  auto add = [&](const std::string& name, const HRep& h) { out.push_back({name, sector_polygon(h)}); };
  const auto pauli = rado_hrep(Permutohedron(OccupationVector::hartree_fock(N, 3).entries()), "Pauli");
  if (which == "fig2") {
    const auto lam = build_body(p, "lambda_down", o);
    add("lambda", lam);
    const auto pieces = orbit_pieces(sector_polygon(lam), N);
    std::vector<Point2> all;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      out.push_back({"lambda_orbit_" + std::to_string(i), pieces[i]});
      all.insert(all.end(), pieces[i].begin(), pieces[i].end());
    }
    out.push_back({"lambda_orbit_hull", convex_hull(all)});
    add("pauli", pauli);
    return out;
  }
  if (which == "fig3") {
    add("pauli", pauli);
    add("sigma_w", build_body(p, "sigma_w", o));
    add("xi", build_body(p, "xi", o));
    add("lambda", build_body(p, "lambda_down", o));
    return out;
  }
  if (which == "fig6") {
    detail::require_pair(p, "fig6");
    const auto& l1 = p.require_lambda1("fig6");
    const double w = p.w1();
    add("sigma_w", build_body(p, "sigma_w", o));
    const auto sprime = minkowski_sum(scale(Permutohedron(l1.sorted()), w),
                                      scale(Permutohedron(OccupationVector::hartree_fock(N, 3).entries()), 1 - w));
    add("sigma_prime", rado_hrep(sprime, "Eq49"));
    add("sigma_w_lambda1", build_body(p, "sigma_w_lambda1", o));
    const auto v = sigma_w_lambda1_vertex(w, l1, N);
    out.push_back({"vertex", {{v[0], v[1]}}});
    add("pauli", pauli);
    return out;
  }
  throw InputError("figure: unknown figure '" + which + "' (expected fig2, fig3 or fig6)");
}

inline int cmd_figure(const std::string& which, const ProblemFile& p, const CommonOptions& o, std::ostream& out) {
  const auto bodies = figure_bodies(which, p, o);
  out << csv_line({"figure", "body", "vertex", "lambda1", "lambda2"});
  for (const auto& b : bodies) {
    for (std::size_t i = 0; i < b.polygon.size(); ++i) {
      out << csv_line({which, b.name, std::to_string(i), format_double(b.polygon[i].x), format_double(b.polygon[i].y)});
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- front end

/// Parses argv, runs one subcommand and maps errors to exit codes.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"wrep: spectral constraint sets for w-ensemble N-representability"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "wrep 0.1.0");

  CommonOptions common;
  std::string chi_text, out_path, problem_path;
  double tol = kTolerance;
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  unsigned workers = 0;

  auto add_common = [&](CLI::App* sub, bool with_problem) {
    if (with_problem) sub->add_option("--problem", problem_path, "problem JSON file");
    sub->add_option("--chi", chi_text, "chi variant: validated (default) or paper")
        ->check(CLI::IsMember({"validated", "paper"}));
    sub->add_option("--tol", tol, "membership tolerance")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", out_path, "write output to this file instead of stdout");
  };

  auto* gen = app.add_subcommand("gen", "emit a constraint set as HRep JSON");
  std::string which;
  gen->add_option("which", which, "sigma_w | lambda_h | lambda_down | xi | sigma_w_lambda1")->required();
  add_common(gen, true);

  auto* check = app.add_subcommand("check", "test a spectrum against a constraint set");
  std::string spectrum_text, spectrum_file, body, hrep_path;
  bool lattice = false;
  add_common(check, true);
  check->add_option("--spectrum", spectrum_text, "comma-separated spectrum");
  check->add_option("--spectrum-file", spectrum_file, "file holding the spectrum");
  check->add_option("--body", body, "body to test against (default: most refined available)");
  check->add_option("--hrep", hrep_path, "HRep JSON file to test against");
  check->add_flag("--lattice", lattice, "treat the input as lattice occupations");

  auto* scan = app.add_subcommand("scan", "residual bounds over a parameter grid (CSV)");
  ScanConfig cfg;
  std::string grid_text;
  add_common(scan, true);
  scan->add_option("--kind", cfg.kind, "hubbard (U grid) or w (weight grid)")->check(CLI::IsMember({"hubbard", "w"}));
  scan->add_option("--grid", grid_text, "start:stop:count or a comma-separated list")->required();
  scan->add_option("--w", cfg.w, "ensemble weight for the hubbard scan");
  scan->add_option("--sites", cfg.sites, "chain length for the hubbard scan");
  scan->add_option("--seed", seed, "random seed");
  scan->add_option("--workers", workers, "worker threads (0: all cores)");

  auto* audit = app.add_subcommand("audit", "oracle containment audit (JSON)");
  int refine = 0;
  add_common(audit, true);
  audit->add_option("--samples", samples, "samples per stream")->check(CLI::PositiveNumber);
  audit->add_option("--seed", seed, "random seed");
  audit->add_option("--workers", workers, "worker threads (0: all cores)");
  audit->add_option("--refine", refine, "local ascent steps on the N-prefix after sampling");

  auto* figure = app.add_subcommand("figure", "polygon vertices of the d = 3 bodies (CSV)");
  std::string fig;
  figure->add_option("which", fig, "fig2 | fig3 | fig6")->required();
  add_common(figure, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << "wrep 0.1.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "wrep: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (!chi_text.empty()) common.chi = parse_chi_variant(chi_text);
    common.tol = tol;
    common.seed = seed;
    common.samples = samples;
    common.workers = workers;

    std::optional<ProblemFile> problem;
    if (!problem_path.empty()) problem = parse_problem_text(read_text_file(problem_path));
    auto need_problem = [&](const std::string& who) -> const ProblemFile& {
      if (!problem) throw InputError(who + ": --problem is required");
      return *problem;
    };

    std::ostringstream buf;
    int code = kExitOk;
    if (*gen) {
      code = cmd_gen(need_problem("gen"), which, common, buf);
    } else if (*check) {
      CheckRequest req;
      if (spectrum_text.empty() == spectrum_file.empty()) {
        throw InputError("check: give exactly one of --spectrum and --spectrum-file");
      }
      req.spectrum = parse_number_list(spectrum_text.empty() ? read_text_file(spectrum_file) : spectrum_text,
                                       "spectrum");
      req.body = body;
      req.lattice = lattice;
      if (!hrep_path.empty()) req.hrep = hrep_from_json(parse_json(read_text_file(hrep_path), "HRep"));
      code = cmd_check(problem, req, common, buf);
    } else if (*scan) {
      cfg.grid = parse_grid(grid_text);
      cfg.seed = seed;
      code = cmd_scan(cfg, problem, common, buf);
    } else if (*audit) {
      code = cmd_audit(need_problem("audit"), common, refine, buf);
    } else if (*figure) {
      code = cmd_figure(fig, need_problem("figure"), common, buf);
    }

    if (out_path.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw InputError("cannot write '" + out_path + "'");
      f << buf.str();
    }
    return code;
  } catch (const InputError& e) {
    err << "wrep: input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const CapabilityError& e) {
    err << "wrep: capability limit: " << e.what() << '\n';
    return kExitCapability;
  } catch (const InvariantError& e) {
    err << "wrep: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace wrep

// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance checks. `acceptance K` runs criterion K and prints one line
// "criterion K: PASS|FAIL ..."; `acceptance all` runs 1..11.

#include "wrep/cli/commands.hpp"
#include "wrep/constraints/bounds.hpp"
#include "wrep/constraints/horn.hpp"
#include "wrep/constraints/sigma_w.hpp"
#include "wrep/constraints/vertex.hpp"
#include "wrep/fockoracle/audit.hpp"
#include "wrep/fockoracle/hubbard.hpp"
#include "wrep/fockoracle/sampling.hpp"
#include "wrep/geometry2d.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef WREP_GOLDEN_DIR
#define WREP_GOLDEN_DIR "tests/golden"
#endif

using namespace wrep;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) { return format_double(x); }

std::string fmt_short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

OccupationVector random_pauli(int N, int d, Rng& rng) {
  return to_occupation(hermitian_spectrum(random_slater_mixture(N, d, rng)), N);
}

// ------------------------------------------------------------------ 1

Outcome horn_golden() {
  const auto t0 = Clock::now();
  const std::string golden = read_text_file(std::string(WREP_GOLDEN_DIR) + "/horn_d3.txt");
  const std::string text = horn_symbolic_text(3);
  bool ok = text == golden;
  std::string why = ok ? "golden text identical" : "symbolic text differs from golden";

  // Rational mode: each row must be z-pattern <= x.px + y.py exactly, with the
  // patterns parsed back out of the golden file.
  struct Pat {
    std::vector<int> z, x, y;
  };
  std::vector<Pat> pats;
  std::istringstream in(golden);
  std::string line;
  auto grab = [](const std::string& l, char tag) {
    const auto p = l.find(std::string(1, tag) + "[");
    std::vector<int> v;
    for (std::size_t i = p + 2; l[i] != ']'; ++i) {
      if (l[i] == '0' || l[i] == '1') v.push_back(l[i] - '0');
    }
    return v;
  };
  while (std::getline(in, line)) {
    if (!line.empty()) pats.push_back({grab(line, 'z'), grab(line, 'x'), grab(line, 'y')});
  }
  ok = ok && pats.size() == 12;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-50, 50);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    std::vector<Rational> x, y;
    for (int i = 0; i < 3; ++i) {
      x.emplace_back(num(rng), 7);
      y.emplace_back(num(rng), 11);
    }
    x = sorted_desc(x);
    y = sorted_desc(y);
    const auto h = horn_hrep_d3<Rational>(std::span<const Rational>(x), std::span<const Rational>(y));
    if (h.rows.size() != 12) {
      ++mismatches;
      continue;
    }
    for (std::size_t r = 0; r < 12; ++r) {
      Rational rhs(0);
      for (int i = 0; i < 3; ++i) rhs += x[i] * pats[r].x[i] + y[i] * pats[r].y[i];
      std::vector<Rational> a;
      for (int i = 0; i < 3; ++i) a.emplace_back(pats[r].z[i]);
      if (h.rows[r].coeffs != a || h.rows[r].rhs != rhs) ++mismatches;
    }
  }
  ok = ok && mismatches == 0;
  const double t = seconds_since(t0);
  ok = ok && t < 1.0;
  return {ok, why + ", rational rows exact on 200 draws (" + std::to_string(mismatches) + " mismatches), " +
                  fmt_short(t) + " s"};
}

// ------------------------------------------------------------------ 2

template <class T>
struct PrintedRow {
  std::vector<int> lhs;
  std::vector<int> fixed;
  T constant;
};

template <class T>
std::vector<PrintedRow<T>> printed_a5(T w) {
  const T s = T(1) - w;
  return {{{1, 0, 0}, {1, 0, 0}, s},
          {{0, 1, 0}, {0, 1, 0}, s},
          {{0, 0, 1}, {1, 0, 0}, T(2) * s / T(3)},
          {{0, 0, 1}, {0, 0, 1}, s},
          {{1, 0, 1}, {1, 1, 0}, T(3) * s / T(2)},
          {{0, 1, 1}, {1, 1, 0}, T(4) * s / T(3)},
          {{0, 1, 1}, {1, 0, 1}, T(3) * s / T(2)}};
}

Outcome a5_rows() {
  const auto t0 = Clock::now();
  double worst = 0;
  bool exact = true;
  bool shape = true;
  for (int tenth : {1, 3, 5, 7, 9}) {
    const double w = tenth / 10.0;
    const auto sys = lambda_h_system<double>(w, 2, 3);
    const auto want = printed_a5<double>(w);
    shape = shape && sys.rows.size() == 7;
    for (std::size_t r = 0; r < std::min<std::size_t>(7, sys.rows.size()); ++r) {
      for (int i = 0; i < 3; ++i) {
        worst = std::max(worst, std::abs(sys.rows[r].coeffs[i] - want[r].lhs[i]));
        worst = std::max(worst, std::abs(sys.rows[r].fixed_coeffs[i] - w * want[r].fixed[i]));
      }
      worst = std::max(worst, std::abs(sys.rows[r].constant - want[r].constant));
      shape = shape && sys.rows[r].label == "A5:row" + std::to_string(r + 1);
    }
    const Rational wq(tenth, 10);
    const auto sq = lambda_h_system<Rational>(wq, 2, 3);
    const auto wantq = printed_a5<Rational>(wq);
    exact = exact && sq.rows.size() == 7;
    for (std::size_t r = 0; r < std::min<std::size_t>(7, sq.rows.size()); ++r) {
      for (int i = 0; i < 3; ++i) {
        exact = exact && sq.rows[r].coeffs[i] == Rational(wantq[r].lhs[i]);
        exact = exact && sq.rows[r].fixed_coeffs[i] == wq * wantq[r].fixed[i];
      }
      exact = exact && sq.rows[r].constant == wantq[r].constant;
    }
  }
  const double t = seconds_since(t0);
  const bool ok = shape && exact && worst <= 1e-12 && t < 5.0;
  return {ok, "7 rows at w in {0.1,0.3,0.5,0.7,0.9}, max coefficient error " + fmt(worst) +
                  (exact ? ", rational exact" : ", rational MISMATCH") + ", " + fmt_short(t) + " s"};
}

// ------------------------------------------------------------------ 3

Outcome vertex_agreement() {
  const auto t0 = Clock::now();
  Rng rng(2024);
  std::uniform_int_distribution<int> dist_d(2, 8);
  std::uniform_real_distribution<double> dist_w(0.5, 1.0);
  double worst_lp = 0, worst_sum = 0;
  bool sorted = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = dist_d(rng);
    std::uniform_int_distribution<int> dist_n(1, std::min(4, d));
    const int N = dist_n(rng);
    double w = dist_w(rng);
    if (trial % 50 == 0) w = 1.0;
    if (trial % 50 == 1) w = 0.5;
    OccupationVector l1 = random_pauli(N, d, rng);
    if (trial % 25 == 2) l1 = OccupationVector::hartree_fock(N, d);
    if (trial % 25 == 3) l1 = OccupationVector::uniform(N, d);
    const auto v = sigma_w_lambda1_vertex(w, l1, N);
    const auto lp = lp_vertex(sigma_w_lambda1_intersection(w, l1, N));
    double total = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      worst_lp = std::max(worst_lp, std::abs(v[i] - lp[i]));
      total += v[i];
      if (i && v[i] > v[i - 1] + 1e-12) sorted = false;
    }
    worst_sum = std::max(worst_sum, std::abs(total - N));
  }
  const auto fig6 = sigma_w_lambda1_vertex(0.6, OccupationVector::make({0.8, 0.7, 0.5}, 2), 2);
  double fig6_err = 0;
  const double want[] = {0.88, 0.72, 0.40};
  for (int i = 0; i < 3; ++i) fig6_err = std::max(fig6_err, std::abs(fig6[i] - want[i]));
  const double t = seconds_since(t0);
  const bool ok = worst_lp <= 1e-10 && worst_sum <= 1e-12 && sorted && fig6_err <= 1e-12 && t < 60;
  return {ok, "1000 draws: max |formula - LP| " + fmt(worst_lp) + ", max |sum - N| " + fmt(worst_sum) +
                  (sorted ? ", sorted" : ", UNSORTED") + "; fig6 vertex " + format_vector(fig6) + ", " +
                  fmt_short(t) + " s"};
}

// ------------------------------------------------------------------ 4, 5

struct ContainmentRun {
  int N, d;
  double w;
  AuditSummary summary;
};

std::vector<ContainmentRun>& containment_runs() {
  static std::vector<ContainmentRun> runs;
  static bool done = false;
  if (done) return runs;
  done = true;
  std::uint64_t seed = 100;
  for (auto [N, d] : {std::pair{2, 3}, {2, 4}, {2, 5}, {3, 6}}) {
    for (double w : {0.5, 0.7, 0.9}) {
      AuditOptions opt;
      opt.samples = 100000;
      opt.seed = seed++;
      opt.inject = false;
      opt.refine_iterations = 3000;
      runs.push_back({N, d, w, audit_problem(N, d, WeightVector::pair(w), std::nullopt, opt)});
    }
  }
  return runs;
}

Outcome containment() {
  const auto t0 = Clock::now();
  std::size_t viol = 0, checked = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& r : containment_runs()) {
    for (const char* fam : {"sigma_w", "omega_upper", "lambda_down"}) {
      auto it = r.summary.families.find(fam);
      if (it == r.summary.families.end()) continue;
      viol += it->second.violations;
      checked += it->second.checked;
      worst = std::min(worst, it->second.worst_margin);
    }
  }
  // Fixed-first sampling at d = 3 against lambda_down_hrep built from spec(γ(ψ1)).
  std::size_t ff_viol = 0, ff_checked = 0;
  for (int N : {1, 2}) {
    auto basis = std::make_shared<const FockBasis>(N, 3);
    for (double w : {0.5, 0.7, 0.9}) {
      for (std::uint64_t k = 0; k < 5; ++k) {
        Rng prng(sample_seed(77, k + 10 * N));
        const auto psi1 = random_state(basis, prng);
        const auto l1 = to_occupation(hermitian_spectrum(onerdm(psi1)), N);
        const auto h = lambda_down_hrep(w, l1, N, 3);
        for (std::uint64_t i = 0; i < 4000; ++i) {
          auto rng = sample_rng(sample_seed(78, k + 10 * N), i);
          const auto lam = ensemble_onerdm(sample_with_fixed_first(WeightVector::pair(w), psi1, rng)).spectrum;
          const auto v = membership(h, lam, 1e-10);
          ++ff_checked;
          ff_viol += !v.member;
          for (double s : v.slacks) worst = std::min(worst, s);
        }
      }
    }
  }
  const double t = seconds_since(t0);
  const bool ok = viol == 0 && ff_viol == 0 && worst >= -1e-10 && t < 180;
  return {ok, "12 (N,d,w) x 1e5 ensembles: " + std::to_string(viol) + " violations in " + std::to_string(checked) +
                  " family checks; fixed-first d=3: " + std::to_string(ff_viol) + "/" + std::to_string(ff_checked) +
                  "; worst margin " + fmt(worst) + ", " + fmt_short(t) + " s"};
}

Outcome tightness() {
  double worst_gap = 0;
  std::string where;
  for (const auto& r : containment_runs()) {
    const double target = r.N - 1 + r.w;
    const double got = std::max(r.summary.max_prefix_N, r.summary.max_prefix_N_refined);
    const double gap = target - got;
    if (gap > worst_gap) {
      worst_gap = gap;
      where = "(N=" + std::to_string(r.N) + ",d=" + std::to_string(r.d) + ",w=" + fmt_short(r.w) + ")";
    }
  }
  return {worst_gap <= 0.05, "largest gap to N-1+w over 12 (N,d,w): " + fmt_short(worst_gap) +
                                 (where.empty() ? "" : " at " + where)};
}

// ------------------------------------------------------------------ 6

Outcome chi_adjudication() {
  auto basis = std::make_shared<const FockBasis>(2, 3);
  const auto psi1 = PureState::slater(basis, {0, 1});
  FockEnsemble e(WeightVector::pair(0.6), {psi1, PureState::slater(basis, {1, 2})});
  const auto lam = ensemble_onerdm(e).spectrum;
  const bool spec_ok = std::abs(lam[0] - 1) <= 1e-12 && std::abs(lam[1] - 0.6) <= 1e-12 && std::abs(lam[2] - 0.4) <= 1e-12;
  const auto l1 = to_occupation(hermitian_spectrum(onerdm(psi1)), 2);
  const double p2 = lam[0] + lam[1];
  const double paper_violation = xi_lower(0.6, 2, 2, 3, l1, ChiVariant::paper) - p2;
  const double validated_margin = p2 - xi_lower(0.6, 2, 2, 3, l1, ChiVariant::validated);

  ProblemFile p;
  RawSpec raw{2, 3, {0.6, 0.4}, {{1, {1, 1, 0}}}};
  p.spec = validate_spec(raw);
  CommonOptions o;
  o.samples = 10000;
  o.seed = 1;
  std::ostringstream out;
  const int code = cmd_audit(p, o, 0, out);
  const auto j = nlohmann::json::parse(out.str());
  const auto paper_count = j["families"]["xi_paper"]["violations"].get<std::size_t>();
  const auto valid_count = j["families"]["xi_validated"]["violations"].get<std::size_t>();

  const bool ok = spec_ok && paper_violation >= 0.09 && validated_margin >= 0.29 && paper_count >= 1 &&
                  valid_count == 0 && code == kExitOk;
  return {ok, "spectrum " + format_vector(lam) + ", lambda1 " + format_vector(l1.sorted()) +
                  ": paper k=2 violation " + fmt_short(paper_violation) + " (need >= 0.09), validated margin " +
                  fmt_short(validated_margin) + " (need >= 0.29); audit 1e4: paper " + std::to_string(paper_count) +
                  ", validated " + std::to_string(valid_count) + ", exit " + std::to_string(code)};
}

// ------------------------------------------------------------------ 7

Outcome limit_collapse() {
  Rng rng(31);
  double worst_gap = 0, worst_point = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 7;
    const int N = 1 + trial % std::min(4, d - 1);
    const auto l1 = random_pauli(N, d, rng);
    for (ChiVariant v : {ChiVariant::validated}) {
      const auto r = residual_bounds(1.0, N, d, l1, N, v);
      worst_gap = std::max(worst_gap, std::abs(r.upper() - r.lower()));
    }
    const auto h = sigma_w_lambda1_hrep(1.0, l1, N);
    const auto ps = l1.prefix_sums();
    for (const auto& row : h.rows) {
      int k = 0;
      for (double a : row.coeffs) k += a != 0;
      worst_point = std::max(worst_point, std::abs(row.rhs - ps[static_cast<std::size_t>(k - 1)]));
    }
  }
  const bool ok = worst_gap <= 1e-12 && worst_point <= 1e-12;
  return {ok, "200 draws at w=1: max |upper - lower| " + fmt(worst_gap) + ", max |prefix bound - prefix(lambda1)| " +
                  fmt(worst_point)};
}

// ------------------------------------------------------------------ 8

Outcome fig2_geometry() {
  const auto centre = std::vector<double>(3, 2.0 / 3.0);
  const bool left = orbit_convexity_check(lambda_down_hrep(0.7, OccupationVector::uniform(2, 3), 2, 3));
  std::string detail = std::string("uniform convex=") + (left ? "true" : "false");
  bool ok = left;
  for (const auto& l : {std::vector<double>{1, 0.6, 0.4}, std::vector<double>{0.9, 0.9, 0.2}}) {
    const auto h = lambda_down_hrep(0.7, OccupationVector::make(l, 2), 2, 3);
    const bool convex = orbit_convexity_check(h);
    const auto v = membership(h, centre);
    double worst = 0;
    for (double s : v.slacks) worst = std::min(worst, s);
    ok = ok && !convex && !v.member && -worst >= 0.08;
    detail += "; " + format_vector(l) + " convex=" + (convex ? "true" : "false") + " centre violation " +
              fmt_short(-worst);
  }
  return {ok, detail};
}

// ------------------------------------------------------------------ 9

Outcome nesting() {
  struct Inst {
    double w;
    std::vector<double> l1;
  };
  const std::vector<Inst> insts{{0.7, {1, 0.6, 0.4}}, {0.7, {0.9, 0.9, 0.2}}, {0.6, {0.8, 0.7, 0.5}}};
  std::size_t bad = 0, in_lambda = 0, in_xi = 0, total = 0;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& in : insts) {
    const auto l1 = OccupationVector::make(in.l1, 2);
    const auto lam = lambda_down_hrep(in.w, l1, 2, 3);
    const auto xi = xi_hrep(in.w, 2, 3, l1, ChiVariant::validated).hrep;
    const auto sig = sigma_w_hrep_t<double>(2, 3, in.w);
    for (int i = 0; i < 10000; ++i) {
      // Uniform over the sorted Pauli sector: λ1 in [2/3, 1], λ2 in [0.5, 1].
      const double a = 2.0 / 3.0 + u(rng) / 3.0, b = 0.5 + u(rng) / 2.0;
      const std::vector<double> p{a, b, 2 - a - b};
      const bool L = membership(lam, p).member, X = membership(xi, p).member, S = membership(sig, p).member;
      in_lambda += L;
      in_xi += X;
      bad += (L && !X) + (X && !S);
      ++total;
    }
  }
  return {bad == 0 && in_lambda > 0, std::to_string(total) + " points over 3 instances: " + std::to_string(in_lambda) +
                                         " in Lambda, " + std::to_string(in_xi) + " in Xi, " + std::to_string(bad) +
                                         " counterexamples"};
}

// ------------------------------------------------------------------ 10

Outcome crossing_scan() {
  const auto t0 = Clock::now();
  std::vector<double> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back(i);
  const auto pts = toy_lattice_scan(2, grid, 0.75);
  int flips = 0, back = 0;
  bool inside = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) {
      flips += !pts[i - 1].crossing && pts[i].crossing;
      back += pts[i - 1].crossing && !pts[i].crossing;
    }
    inside = inside && pts[i].validated.contains_residual(1e-10) && pts[i].residual >= -1e-10;
  }
  const bool ok = flips == 1 && back == 0 && !pts.front().crossing && pts.back().crossing && inside &&
                  seconds_since(t0) < 30;
  std::size_t at = 0;
  while (at < pts.size() && !pts[at].crossing) ++at;
  return {ok, "51 points: " + std::to_string(flips) + " false->true, " + std::to_string(back) +
                  " true->false, first crossing at U=" + (at < pts.size() ? fmt_short(pts[at].U) : "none") +
                  (inside ? ", R_N inside bounds everywhere" : ", R_N OUTSIDE bounds") + ", " +
                  fmt_short(seconds_since(t0)) + " s"};
}

// ------------------------------------------------------------------ 11

Outcome lattice_bound() {
  std::size_t viol = 0, checked = 0;
  double worst = std::numeric_limits<double>::infinity();
  struct Cfg {
    int N, d;
    double w;
  };
  for (const auto& c : {Cfg{2, 4, 0.7}, Cfg{3, 6, 0.6}}) {
    auto basis = std::make_shared<const FockBasis>(c.N, c.d);
    Rng prng(sample_seed(55, static_cast<std::uint64_t>(c.d)));
    const auto psi1 = random_state(basis, prng);
    const auto l1 = to_occupation(hermitian_spectrum(onerdm(psi1)), c.N);
    const auto omega = omega_hrep(c.w, c.N, l1);
    auto acc = parallel_reduce(
        50000, 0, FamilyStats{},
        [&](std::size_t i, FamilyStats& f) {
          auto rng = sample_rng(56 + c.d, i);
          const auto rdm = ensemble_onerdm(sample_with_fixed_first(WeightVector::pair(c.w), psi1, rng));
          f.record(omega, diagonal(rdm.gamma), 1e-10);
        },
        [](FamilyStats& a, const FamilyStats& b) { a.merge(b); });
    viol += acc.violations;
    checked += acc.checked;
    worst = std::min(worst, acc.worst_margin);
  }
  return {viol == 0 && checked == 100000,
          std::to_string(checked) + " ensembles with fixed first state: " + std::to_string(viol) +
              " violations, worst margin " + fmt(worst)};
}

const std::vector<std::function<Outcome()>>& criteria() {
  static const std::vector<std::function<Outcome()>> c{horn_golden,    a5_rows,          vertex_agreement,
                                                       containment,    tightness,        chi_adjudication,
                                                       limit_collapse, fig2_geometry,    nesting,
                                                       crossing_scan,  lattice_bound};
  return c;
}

bool run_one(int k) {
  Outcome o;
  try {
    o = criteria()[static_cast<std::size_t>(k - 1)]();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("criterion %d: %s (%s)\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <1..12|all> [unit-test executables for 12]\n");
    return 2;
  }
  const std::string arg = argv[1];
  if (arg == "all") {
    bool ok = true;
    for (int k = 1; k <= 11; ++k) ok = run_one(k) && ok;
    return ok ? 0 : 1;
  }
  const int k = std::atoi(arg.c_str());
  if (k >= 1 && k <= 11) return run_one(k) ? 0 : 1;
  if (k == 12) {
    // Wall clock of the whole suite: every unit-test binary, then criteria 1..11.
    const auto t0 = Clock::now();
    bool units = true;
    for (int i = 2; i < argc; ++i) {
      const std::string cmd = std::string("\"") + argv[i] + "\" > /dev/null 2>&1";
      units = std::system(cmd.c_str()) == 0 && units;
    }
    const double t_units = seconds_since(t0);
    for (int c = 1; c <= 11; ++c) {
      try {
        criteria()[static_cast<std::size_t>(c - 1)]();
      } catch (const std::exception&) {
      }
    }
    const double t = seconds_since(t0);
    const bool ok = t < 300;
    std::printf("criterion 12: %s (full suite %s s: unit tests %s s%s, criteria 1-11 %s s; limit 300 s)\n",
                ok ? "PASS" : "FAIL", fmt_short(t).c_str(), fmt_short(t_units).c_str(),
                units ? "" : " with failures", fmt_short(t - t_units).c_str());
    return ok ? 0 : 1;
  }
  std::fprintf(stderr, "unknown criterion '%s'\n", arg.c_str());
  return 2;
}

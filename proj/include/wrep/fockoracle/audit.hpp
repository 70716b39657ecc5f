// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file audit.hpp
 * @brief Containment audits of the generated constraint families against the oracle.
 *
 * Stream "genuine": random w-ensembles, each checked with its own first
 * spectrum λ1 = spec(γ(Ψ1)). Stream "mixed": the fixed-λ1 mixed sampler,
 * checked only against the bodies that hold for arbitrary Hermitian sums.
 * Stream "horn" (d = 3): spectra of X + Y against the twelve Horn rows.
 */

#pragma once

#include "wrep/constraints/bounds.hpp"
#include "wrep/constraints/horn.hpp"
#include "wrep/constraints/sigma_w.hpp"
#include "wrep/fockoracle/parallel.hpp"
#include "wrep/fockoracle/sampling.hpp"
#include "wrep/fockoracle/state.hpp"
#include "wrep/polytope.hpp"
#include "wrep/spectra.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wrep {

struct FamilyStats {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();  // smallest row slack seen
  std::string worst_row;
  bool gates = true;  // counts toward the exit code

  void record(const HRep& h, const std::vector<double>& lambda, double tol) {
    ++checked;
    const auto sorted = sorted_desc(lambda);
    bool bad = false;
    for (const auto& row : h.rows) {
      const double s = row.slack(sorted);
      if (s < worst_margin || (s == worst_margin && row.label < worst_row)) {
        worst_margin = s;
        worst_row = row.label;
      }
      bad = bad || s < -tol;
    }
    violations += bad;
  }

  void merge(const FamilyStats& o) {
    checked += o.checked;
    violations += o.violations;
    if (o.worst_margin < worst_margin || (o.worst_margin == worst_margin && o.worst_row < worst_row)) {
      worst_margin = o.worst_margin;
      worst_row = o.worst_row;
    }
    gates = gates && o.gates;
  }
};

struct AuditOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  double tol = kTolerance;
  unsigned workers = 0;  // 0: hardware concurrency
  bool inject = true;    // deterministic |1..N>, |2..N+1> ensemble
  int refine_iterations = 0;
};

struct AuditSummary {
  int N = 0;
  int d = 0;
  std::vector<double> weights;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::map<std::string, FamilyStats> families;
  double max_prefix_N = -std::numeric_limits<double>::infinity();
  std::size_t max_prefix_N_index = 0;  // genuine sample attaining max_prefix_N
  double max_prefix_N_refined = -std::numeric_limits<double>::infinity();
  double prefix_N_target = 0;  // N - 1 + w1
  double max_deviation_from_lambda1 = 0;
  std::vector<std::string> notes;

  bool clean() const {
    for (const auto& [name, f] : families) {
      if (f.gates && f.violations > 0) return false;
    }
    return true;
  }

  void merge(const AuditSummary& o) {
    for (const auto& [name, f] : o.families) {
      auto it = families.find(name);
      if (it == families.end()) families.emplace(name, f);
      else it->second.merge(f);
    }
    if (o.max_prefix_N > max_prefix_N || (o.max_prefix_N == max_prefix_N && o.max_prefix_N_index < max_prefix_N_index)) {
      max_prefix_N = o.max_prefix_N;
      max_prefix_N_index = o.max_prefix_N_index;
    }
    max_deviation_from_lambda1 = std::max(max_deviation_from_lambda1, o.max_deviation_from_lambda1);
  }
};

namespace detail {

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Per-problem constants shared by all samples.
struct AuditContext {
  int N = 0;
  int d = 0;
  WeightVector w = WeightVector::make({1.0});
  double tol = kTolerance;
  std::shared_ptr<const FockBasis> basis;
  std::optional<HRep> sigma;                   // r <= 2
  std::optional<LambdaHSystem<double>> horn;   // d == 3 and r == 2
};

inline void family(AuditSummary& s, const std::string& name, const HRep& h, const std::vector<double>& lambda,
                   double tol, bool gates = true) {
  auto& f = s.families[name];
  f.gates = gates;
  f.record(h, lambda, tol);
}

/// Checks one genuine ensemble against every family that applies to it.
inline void audit_genuine(const AuditContext& c, const FockEnsemble& e, AuditSummary& s, std::size_t index) {
  const auto rdm = ensemble_onerdm(e);
  const auto& lambda = rdm.spectrum;
  const double p = prefix_sum(lambda, c.N);
  if (p > s.max_prefix_N) {
    s.max_prefix_N = p;
    s.max_prefix_N_index = index;
  }
  const int r = c.w.rank();
  const auto l1 = to_occupation(hermitian_spectrum(onerdm(e.states().front())), c.N);
  if (r == 1) s.max_deviation_from_lambda1 = std::max(s.max_deviation_from_lambda1, max_abs_diff(lambda, l1.sorted()));
  if (c.sigma) family(s, "sigma_w", *c.sigma, lambda, c.tol);
  if (r == 3) {
    HRep h;
    h.dimension = static_cast<std::size_t>(c.d);
    h.sum = c.N;
    std::vector<double> a(h.dimension, 0.0);
    std::fill(a.begin(), a.begin() + c.N, 1.0);
    h.add(a, r3_prefix_upper(c.w[0], c.w[1], c.w[2], l1, c.N), "r3:prefix_N");
    family(s, "r3_prefix_upper", h, lambda, c.tol);
  }
  if (r != 2 || c.d < 2) return;
  const double w = c.w[0];
  const auto omega = omega_hrep(w, c.N, l1);
  family(s, "omega_upper", omega, lambda, c.tol);
  family(s, "lattice", omega, diagonal(rdm.gamma), c.tol);
  family(s, "xi_validated", xi_rows(w, c.N, c.d, l1, ChiVariant::validated), lambda, c.tol);
  family(s, "xi_paper", xi_rows(w, c.N, c.d, l1, ChiVariant::paper), lambda, c.tol, false);
  if (c.horn) {
    auto h = intersect(bind_fixed(c.horn->rows, std::span<const double>(l1.sorted()), double(c.N)), *c.sigma);
    family(s, "lambda_down", h, lambda, c.tol);
  }
}

}  // namespace detail

/// Runs all streams for the problem. λ1, when given, drives the mixed and
/// Horn streams; the genuine stream always uses each sample's own λ1.
inline AuditSummary audit_problem(int N, int d, const WeightVector& w, const std::optional<OccupationVector>& lambda1,
                                  const AuditOptions& opt) {
  if (opt.samples < 1) throw InputError("audit: samples must be >= 1");
  detail::AuditContext c;
  c.N = N;
  c.d = d;
  c.w = w;
  c.tol = opt.tol;
  c.basis = std::make_shared<const FockBasis>(N, d);
  const int r = w.rank();
  if (r > 3) throw CapabilityError("audit: r = " + std::to_string(r) + " > 3 has no generated family");
  if (r <= 2) c.sigma = sigma_w_hrep(N, d, w);
  if (r == 2 && d == 3) c.horn = lambda_h_system<double>(w[0], N, d);
  if (lambda1 && (lambda1->dimension() != d || lambda1->particle_number() != N)) {
    throw InputError("audit: fixed spectrum does not match N and d");
  }

  AuditSummary s;
  s.N = N;
  s.d = d;
  s.weights = w.entries();
  s.samples = opt.samples;
  s.seed = opt.seed;
  s.prefix_N_target = r == 1 ? N : N - 1 + w[0];

  const std::uint64_t genuine_seed = splitmix64(opt.seed ^ 0x67656e75696e65ULL);
  const std::uint64_t mixed_seed = splitmix64(opt.seed ^ 0x6d69786564ULL);
  const std::uint64_t horn_seed = splitmix64(opt.seed ^ 0x686f726eULL);

  auto merge = [](AuditSummary& a, const AuditSummary& b) { a.merge(b); };
  s.merge(parallel_reduce(
      opt.samples, opt.workers, AuditSummary{},
      [&](std::size_t i, AuditSummary& acc) {
        auto rng = sample_rng(genuine_seed, i);
        detail::audit_genuine(c, sample_ensemble(c.basis, w, rng), acc, i);
      },
      merge));

  if (opt.inject && r == 2 && N < d) {
    std::vector<int> a, b;
    for (int i = 0; i < N; ++i) {
      a.push_back(i);
      b.push_back(i + 1);
    }
    // Counted in the families only; the empirical maxima stay purely random.
    AuditSummary inj;
    detail::audit_genuine(c, FockEnsemble(w, {PureState::slater(c.basis, a), PureState::slater(c.basis, b)}), inj, 0);
    for (const auto& [name, f] : inj.families) s.families[name].merge(f);
    s.notes.push_back("injected ensemble |1..N>, |2..N+1> included in the genuine-stream family counts");
  }

  if (lambda1 && r <= 2) {
    const double w1 = r == 1 ? 1.0 : w[0];
    const std::optional<HRep> lh =
        (d == 3 || d == 2) && r == 2 ? std::optional<HRep>(lambda_h_hrep(w1, *lambda1, N, d)) : std::nullopt;
    const HRep xl = xi_lower_hrep(w1, N, d, *lambda1, ChiVariant::validated);
    s.merge(parallel_reduce(
        opt.samples, opt.workers, AuditSummary{},
        [&](std::size_t i, AuditSummary& acc) {
          auto rng = sample_rng(mixed_seed, i);
          const auto lambda = mixed_fixed_first_sample(N, d, w1, *lambda1, rng);
          if (r == 1) acc.max_deviation_from_lambda1 =
              std::max(acc.max_deviation_from_lambda1, detail::max_abs_diff(lambda, lambda1->sorted()));
          if (lh) detail::family(acc, "lambda_h_mixed", *lh, lambda, opt.tol);
          if (d > 1) detail::family(acc, "xi_lower_mixed", xl, lambda, opt.tol);
        },
        merge));
  }

  if (d == 3 && r == 2) {
    const double w1 = w[0];
    std::vector<double> x = lambda1 ? lambda1->sorted() : OccupationVector::hartree_fock(N, d).sorted();
    for (auto& v : x) v *= w1;
    s.merge(parallel_reduce(
        opt.samples, opt.workers, AuditSummary{},
        [&](std::size_t i, AuditSummary& acc) {
          auto rng = sample_rng(horn_seed, i);
          auto y = hermitian_spectrum(random_slater_mixture(N, d, rng));
          for (auto& v : y) v *= 1 - w1;
          const auto lambda = horn_oracle_sample(x, y, rng);
          detail::family(acc, "horn_d3", horn_hrep_d3(x, y), lambda, opt.tol);
        },
        merge));
  }

  if (opt.refine_iterations > 0) {
    // Local ascent on the N-prefix from the best genuine sample.
    auto rng = sample_rng(genuine_seed, s.max_prefix_N_index);
    auto e = sample_ensemble(c.basis, w, rng);
    auto obj = [N](const std::vector<double>& l) { return prefix_sum(l, N); };
    e = refine_ensemble(e, obj, opt.refine_iterations, splitmix64(opt.seed ^ 0x726566ULL));
    s.max_prefix_N_refined = std::max(s.max_prefix_N, obj(ensemble_onerdm(e).spectrum));
  }
  return s;
}

}  // namespace wrep

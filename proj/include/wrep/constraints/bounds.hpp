// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file bounds.hpp
 * @brief Prefix-sum bounds given the first ensemble spectrum, r = 2.
 *
 * With γ = w γ1 + (1 - w) γ2 and only spec(γ1) = λ1 known, the k-prefix
 * sums of spec(γ) are confined to
 *
 *   xi_lower(k) <= Σ_{i<=k} λ_i <= omega_upper(k).
 *
 * Residuals R_k = b_k - Σ_{i<=k} λ_i of the Σ(w) rows inherit these bounds.
 */

#pragma once

#include "wrep/constraints/sigma_w.hpp"
#include "wrep/errors.hpp"
#include "wrep/polytope.hpp"
#include "wrep/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace wrep {

enum class ChiVariant { validated, paper };

inline std::string to_string(ChiVariant v) { return v == ChiVariant::paper ? "paper" : "validated"; }

inline ChiVariant parse_chi_variant(const std::string& s) {
  if (s == "validated") return ChiVariant::validated;
  if (s == "paper") return ChiVariant::paper;
  throw InputError("unknown chi variant '" + s + "' (expected validated or paper)");
}

namespace detail {

inline void check_k(int k, int d, const char* who) {
  if (k < 1 || k > d - 1) {
    throw InputError(std::string(who) + ": k = " + std::to_string(k) + " outside [1, d-1 = " + std::to_string(d - 1) +
                     "]");
  }
}

inline void check_w(double w, const char* who) {
  if (!(w >= 0.0 && w <= 1.0)) throw InputError(std::string(who) + ": weight outside [0, 1]");
}

inline double prefix(const OccupationVector& v, int k) { return v.prefix_sums()[static_cast<std::size_t>(k - 1)]; }

}  // namespace detail

/// Bound on the d-k largest occupations of the second spectrum, in the
/// paper form or the oracle-validated form min(N, d - k).
inline double chi(int N, int d, int k, ChiVariant variant) {
  detail::check_k(k, d, "chi");
  if (variant == ChiVariant::paper) return d - 1 >= N + k ? N : d - k - 1;
  return std::min(N, d - k);
}

inline double omega_upper(double w, int k, int N, const OccupationVector& lambda1) {
  detail::check_w(w, "omega_upper");
  detail::check_k(k, lambda1.dimension(), "omega_upper");
  const double sk = detail::prefix(lambda1, k);
  if (k != N) return w * sk + (1 - w) * std::min(k, N);
  return std::min(N - 1 + w, w * sk + (1 - w) * N);
}

inline double xi_lower(double w, int k, int N, int d, const OccupationVector& lambda1, ChiVariant variant) {
  detail::check_w(w, "xi_lower");
  detail::check_k(k, d, "xi_lower");
  if (lambda1.dimension() != d) throw InputError("xi_lower: dimension mismatch");
  return N - w * (N - detail::prefix(lambda1, k)) - (1 - w) * chi(N, d, k, variant);
}

/// Upper rows Σ_{i<=k} λ_i <= omega_upper(k), k = 1..d-1.
inline HRep omega_hrep(double w, int N, const OccupationVector& lambda1) {
  HRep h;
  const int d = lambda1.dimension();
  h.dimension = static_cast<std::size_t>(d);
  h.sum = N;
  for (int k = 1; k < d; ++k) {
    std::vector<double> a(h.dimension, 0.0);
    std::fill(a.begin(), a.begin() + k, 1.0);
    h.add(std::move(a), omega_upper(w, k, N, lambda1), "Eq33:k=" + std::to_string(k));
  }
  return h;
}

struct XiGap {
  int k = 0;
  double lower = 0;
  double upper = 0;
  double gap = 0;  // lower - upper, positive when the bounds cross
};

struct XiResult {
  HRep hrep;
  bool feasible = true;
  std::vector<XiGap> gaps;
  std::string instance;  // human-readable description
};

/// Lower rows -Σ_{i<=k} λ_i <= -xi_lower(k), k = 1..d-1.
inline HRep xi_lower_hrep(double w, int N, int d, const OccupationVector& lambda1, ChiVariant variant) {
  if (lambda1.dimension() != d || lambda1.particle_number() != N) throw InputError("xi_hrep: N or d mismatch");
  HRep h;
  h.dimension = static_cast<std::size_t>(d);
  h.sum = N;
  for (int k = 1; k < d; ++k) {
    std::vector<double> a(static_cast<std::size_t>(d), 0.0);
    std::fill(a.begin(), a.begin() + k, -1.0);
    h.add(std::move(a), -xi_lower(w, k, N, d, lambda1, variant), "Eq34:k=" + std::to_string(k));
  }
  return h;
}

/// Upper and lower rows together, without the feasibility LP.
inline HRep xi_rows(double w, int N, int d, const OccupationVector& lambda1, ChiVariant variant) {
  auto h = omega_hrep(w, N, lambda1);
  for (auto& row : xi_lower_hrep(w, N, d, lambda1, variant).rows) h.rows.push_back(std::move(row));
  return h;
}

inline XiResult xi_hrep(double w, int N, int d, const OccupationVector& lambda1, ChiVariant variant) {
  XiResult out;
  out.hrep = xi_rows(w, N, d, lambda1, variant);
  for (int k = 1; k < d; ++k) {
    const double lo = xi_lower(w, k, N, d, lambda1, variant);
    const double up = omega_upper(w, k, N, lambda1);
    if (lo > up + kTolerance) out.gaps.push_back({k, lo, up, lo - up});
  }
  out.feasible = out.gaps.empty() && is_feasible(out.hrep);
  out.instance = "N=" + std::to_string(N) + " d=" + std::to_string(d) + " w=" + std::to_string(w) +
                 " lambda1=" + format_vector(lambda1.entries()) + " chi=" + to_string(variant);
  return out;
}

/// RHS b_k of the k-th Σ(w) row.
inline double sigma_w_rhs(double w, int N, int k) {
  if (k < N) return k;
  if (k == N) return N - 1 + w;
  return N;
}

inline double residual(const OccupationVector& lambda, double w, int N, int k) {
  detail::check_w(w, "residual");
  detail::check_k(k, lambda.dimension(), "residual");
  return sigma_w_rhs(w, N, k) - detail::prefix(lambda, k);
}

struct ResidualBoundReport {
  int k = 0;
  std::optional<double> residual_value;
  double lower_trivial = 0;
  double lower_refined = 0;
  double upper_trivial = 0;
  double upper_refined = 0;
  std::string active;  // e.g. "lower=refined,upper=trivial"
  ChiVariant chi_variant = ChiVariant::validated;

  double lower() const { return std::max(lower_trivial, lower_refined); }
  double upper() const { return std::min(upper_trivial, upper_refined); }
  bool contains_residual(double tol = kTolerance) const {
    return residual_value && *residual_value >= lower() - tol && *residual_value <= upper() + tol;
  }
};

inline ResidualBoundReport residual_bounds(double w, int N, int d, const OccupationVector& lambda1, int k,
                                           ChiVariant variant,
                                           const std::optional<OccupationVector>& lambda = std::nullopt) {
  detail::check_k(k, d, "residual_bounds");
  ResidualBoundReport r;
  r.k = k;
  r.chi_variant = variant;
  const double b = sigma_w_rhs(w, N, k);
  r.lower_trivial = 0.0;
  r.lower_refined = b - omega_upper(w, k, N, lambda1);
  // Smallest k-prefix over the Pauli simplex is attained at the uniform vector.
  r.upper_trivial = b - static_cast<double>(k) * N / d;
  r.upper_refined = b - xi_lower(w, k, N, d, lambda1, variant);
  r.active = std::string("lower=") + (r.lower_refined > r.lower_trivial ? "refined" : "trivial") +
             ",upper=" + (r.upper_refined < r.upper_trivial ? "refined" : "trivial");
  if (lambda) r.residual_value = residual(*lambda, w, N, k);
  return r;
}

/// True when the refined lower bound on R_N is at least the trivial bound 0.
inline bool crossing_condition(double w, int N, const OccupationVector& lambda1) {
  if (w == 0.0) throw InputError("crossing_condition: w = 0");
  detail::check_w(w, "crossing_condition");
  if (N > lambda1.dimension()) throw InputError("crossing_condition: N exceeds d");
  return lambda1.prefix_sums()[static_cast<std::size_t>(N - 1)] <= N - (1 - w) / w;
}

/// Lattice occupations: every k-prefix of sorted n must stay below omega_upper.
inline MembershipVerdict<double> lattice_occupation_check(const OccupationVector& n, double w,
                                                          const OccupationVector& lambda1, int N,
                                                          double tol = kTolerance) {
  if (n.dimension() != lambda1.dimension()) throw InputError("lattice_occupation_check: dimension mismatch");
  return membership(omega_hrep(w, N, lambda1), n, tol);
}

}  // namespace wrep

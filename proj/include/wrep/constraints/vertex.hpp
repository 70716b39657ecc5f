// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file vertex.hpp
 * @brief Generating vertex of conv(Ξ) for r = 2 and its two H-representations.
 */

#pragma once

#include "wrep/constraints/bounds.hpp"
#include "wrep/constraints/sigma_w.hpp"
#include "wrep/errors.hpp"
#include "wrep/polytope.hpp"
#include "wrep/spectra.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace wrep {

/// Sorted generator ṽ of Σ(w, λ1), so that Σ(w, λ1) = P(ṽ).
inline std::vector<double> sigma_w_lambda1_vertex(double w, const OccupationVector& lambda1, int N) {
  detail::check_w(w, "sigma_w_lambda1_vertex");
  const int d = lambda1.dimension();
  if (lambda1.particle_number() != N) throw InputError("sigma_w_lambda1_vertex: N mismatch");
  const auto& l = lambda1.sorted();
  if (N == d) return l;  // only the filled shell
  std::vector<double> v(static_cast<std::size_t>(d));
  double head = 0;
  for (int i = 0; i < N - 1; ++i) {
    v[i] = w * l[i] + (1 - w);
    head += v[i];
  }
  const double cap = w * l[N - 1] + (1 - w);
  v[N - 1] = std::min(cap, N - 1 + w - head);
  const double spill = cap - v[N - 1];
  v[N] = w * l[N] + spill;
  for (int i = N + 1; i < d; ++i) v[i] = w * l[i];

  double total = 0;
  for (double x : v) total += x;
  // Round-off sized inversions are tolerated.
  for (int i = 1; i < d; ++i) {
    if (v[i] > v[i - 1] + 1e-12) {
      throw InvariantError("sigma_w_lambda1_vertex: vertex not decreasingly ordered: " + format_vector(v));
    }
  }
  if (std::abs(total - N) > 1e-12 * std::max(1, d)) {
    throw InvariantError("sigma_w_lambda1_vertex: vertex sums to " + std::to_string(total));
  }
  return v;
}

/// Σ(w) ∩ (w P(λ1) ⊕ (1 - w) P(HF)) as an unpruned H-representation.
inline HRep sigma_w_lambda1_intersection(double w, const OccupationVector& lambda1, int N) {
  const int d = lambda1.dimension();
  const auto sprime = minkowski_sum(scale(Permutohedron(lambda1.sorted()), w),
                                    scale(Permutohedron(OccupationVector::hartree_fock(N, d).entries()), 1 - w));
  return intersect(sigma_w_hrep_t<double>(N, d, w), rado_hrep(sprime, "Eq49"));
}

/// Vertex recovered from LP support maxima of the intersection in the
/// prefix-indicator directions: v_k = h(1_{<=k}) - h(1_{<k}).
inline std::vector<double> lp_vertex(const HRep& h) {
  const std::size_t d = h.dimension;
  std::vector<double> v(d);
  double prev = 0;
  for (std::size_t k = 1; k <= d; ++k) {
    std::vector<double> c(d, 0.0);
    std::fill(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k), 1.0);
    const double s = support_max(h, c);
    v[k - 1] = s - prev;
    prev = s;
  }
  return v;
}

/// P(ṽ) as prefix rows, after checking it against the intersection route.
inline HRep sigma_w_lambda1_hrep(double w, const OccupationVector& lambda1, int N) {
  const auto v = sigma_w_lambda1_vertex(w, lambda1, N);
  auto direct = rado_hrep(Permutohedron(v), "Eq47:vertex");
  const auto pruned = prune_redundant(sigma_w_lambda1_intersection(w, lambda1, N));
  const std::size_t d = v.size();
  for (std::size_t k = 1; k <= d; ++k) {
    std::vector<double> c(d, 0.0);
    std::fill(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k), 1.0);
    const double a = support_max(direct, c);
    const double b = support_max(pruned, c);
    if (std::abs(a - b) > 1e-9) {
      throw InvariantError("sigma_w_lambda1_hrep: construction paths disagree at k = " + std::to_string(k));
    }
  }
  return direct;
}

}  // namespace wrep

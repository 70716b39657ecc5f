// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sigma_w.hpp
 * @brief Spectral polytope of w-ensembles and permutohedra of partial ensembles.
 */

#pragma once

#include "wrep/errors.hpp"
#include "wrep/polytope.hpp"
#include "wrep/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace wrep {

/// Prefix rows of Σ(w) for r <= 2, parametrized by the largest weight w1.
template <Scalar T>
BasicHRep<T> sigma_w_hrep_t(int N, int d, T w1) {
  if (N < 1 || d < N) throw InputError("sigma_w_hrep: need 1 <= N <= d");
  BasicHRep<T> h;
  h.dimension = static_cast<std::size_t>(d);
  h.sum = T(N);
  for (int k = 1; k < d; ++k) {
    std::vector<T> a(h.dimension, T(0));
    std::fill(a.begin(), a.begin() + k, T(1));
    T b = k < N ? T(k) : (k == N ? T(T(N - 1) + w1) : T(N));
    h.add(std::move(a), std::move(b), "B1:k=" + std::to_string(k));
  }
  return h;
}

inline HRep sigma_w_hrep(int N, int d, const WeightVector& w) {
  if (w.rank() >= 3) {
    throw CapabilityError("sigma_w_hrep: r = " + std::to_string(w.rank()) +
                          " >= 3 is not generated internally; supply the H-representation of Sigma(w) as input");
  }
  return sigma_w_hrep_t<double>(N, d, w.rank() == 1 ? 1.0 : w[0]);
}

/// Σ(w_{K^c}) as a permutohedron: (s x (N-1), weights outside K in
/// decreasing order, zeros) with s the total weight outside K.
struct PartialEnsembleBody {
  Permutohedron body;
  bool degenerate = false;  // K covers every nonzero weight
};

inline PartialEnsembleBody sigma_wkc_permutohedron(const WeightVector& w, const std::vector<int>& K, int N, int d) {
  if (N < 1 || d < N) throw InputError("sigma_wkc_permutohedron: need 1 <= N <= d");
  const int r = w.rank();
  std::set<int> fixed(K.begin(), K.end());
  for (int i : fixed) {
    if (i < 1 || i > r) throw InputError("sigma_wkc_permutohedron: index " + std::to_string(i) + " outside [1, r]");
  }
  std::vector<double> rest;
  for (int i = 1; i <= r; ++i) {
    if (!fixed.count(i)) rest.push_back(w[static_cast<std::size_t>(i - 1)]);
  }
  PartialEnsembleBody out;
  if (rest.empty()) {
    out.body = Permutohedron(std::vector<double>(static_cast<std::size_t>(d), 0.0));
    out.degenerate = true;
    return out;
  }
  std::sort(rest.begin(), rest.end(), std::greater<>());
  double s = 0;
  for (double x : rest) s += x;
  std::vector<double> g;
  for (int i = 0; i < N - 1; ++i) g.push_back(s);
  for (double x : rest) g.push_back(x);
  if (static_cast<int>(g.size()) > d) {
    throw CapabilityError("sigma_wkc_permutohedron: generator longer than d = " + std::to_string(d));
  }
  g.resize(static_cast<std::size_t>(d), 0.0);
  out.body = Permutohedron(std::move(g));
  return out;
}

/// Upper bound on the sum of the N largest occupations for r = 3, K = {1}.
inline double r3_prefix_upper(double w1, double w2, double w3, const OccupationVector& lambda1, int N) {
  if (w1 + 1e-12 < w2 || w2 + 1e-12 < w3 || w3 < -1e-12) {
    throw InputError("r3_prefix_upper: weights must satisfy w1 >= w2 >= w3 >= 0");
  }
  if (std::abs(w1 + w2 + w3 - 1.0) > 1e-10) throw InputError("r3_prefix_upper: weights must sum to 1");
  if (lambda1.particle_number() != N || N > lambda1.dimension()) throw InputError("r3_prefix_upper: N mismatch");
  const double sn = lambda1.prefix_sums()[static_cast<std::size_t>(N - 1)];
  return std::min(N - 1 + w1, w1 * sn + (N - 1) * (w2 + w3) + w2);
}

}  // namespace wrep

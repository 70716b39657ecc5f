// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sampling.hpp
 * @brief Random ensembles, Haar unitaries and spectrum samplers.
 *
 * Every sample draws from its own generator seeded by (base seed, index),
 * so a batch gives the same numbers whichever worker evaluates it.
 */

#pragma once

#include "wrep/errors.hpp"
#include "wrep/fockoracle/basis.hpp"
#include "wrep/fockoracle/state.hpp"
#include "wrep/spectra.hpp"

#include <Eigen/QR>

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <vector>

namespace wrep {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t sample_seed(std::uint64_t base, std::uint64_t index) { return splitmix64(base ^ splitmix64(index)); }

inline Rng sample_rng(std::uint64_t base, std::uint64_t index) { return Rng(sample_seed(base, index)); }

/// Standard complex Gaussian entries, E|z|^2 = 1.
inline CVector complex_gaussian(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = nd(rng);
    const double im = nd(rng);
    v[i] = Complex(re, im);
  }
  return v;
}

/// Gram-Schmidt (two passes) on v[from..]; v[0..from) must already be orthonormal.
inline void orthonormalize(std::vector<CVector>& v, std::size_t from = 0) {
  for (std::size_t i = from; i < v.size(); ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < i; ++j) v[i] -= v[j].dot(v[i]) * v[j];
    }
    const double n = v[i].norm();
    if (n < 1e-8) throw InvariantError("orthonormalize: linearly dependent vectors");
    v[i] /= n;
  }
}

namespace detail {

inline std::vector<PureState> wrap(const std::shared_ptr<const FockBasis>& basis, std::vector<CVector>& v) {
  std::vector<PureState> out;
  out.reserve(v.size());
  for (auto& x : v) out.emplace_back(basis, std::move(x));
  return out;
}

inline void check_rank(const FockBasis& basis, const WeightVector& w) {
  if (static_cast<std::size_t>(w.rank()) > basis.dim()) {
    throw InputError("ensemble rank r = " + std::to_string(w.rank()) + " exceeds the Fock dimension " +
                     std::to_string(basis.dim()));
  }
}

}  // namespace detail

inline FockEnsemble sample_ensemble(const std::shared_ptr<const FockBasis>& basis, const WeightVector& w, Rng& rng) {
  detail::check_rank(*basis, w);
  std::vector<CVector> v;
  for (int i = 0; i < w.rank(); ++i) v.push_back(complex_gaussian(static_cast<Eigen::Index>(basis->dim()), rng));
  orthonormalize(v);
  return FockEnsemble(w, detail::wrap(basis, v));
}

inline FockEnsemble sample_ensemble(const std::shared_ptr<const FockBasis>& basis, const WeightVector& w,
                                    std::uint64_t seed) {
  Rng rng(seed);
  return sample_ensemble(basis, w, rng);
}

inline FockEnsemble sample_ensemble(int N, int d, const WeightVector& w, std::uint64_t seed) {
  return sample_ensemble(std::make_shared<const FockBasis>(N, d), w, seed);
}

inline PureState random_state(const std::shared_ptr<const FockBasis>& basis, Rng& rng) {
  std::vector<CVector> v{complex_gaussian(static_cast<Eigen::Index>(basis->dim()), rng)};
  orthonormalize(v);
  return PureState(basis, std::move(v[0]));
}

/// Ψ1 = ψ1; the remaining r - 1 states are random and orthogonal to it.
inline FockEnsemble sample_with_fixed_first(const WeightVector& w, const PureState& psi1, Rng& rng) {
  const auto& basis = psi1.basis_ptr();
  detail::check_rank(*basis, w);
  std::vector<CVector> v{psi1.amplitudes()};
  for (int i = 1; i < w.rank(); ++i) v.push_back(complex_gaussian(static_cast<Eigen::Index>(basis->dim()), rng));
  orthonormalize(v, 1);
  return FockEnsemble(w, detail::wrap(basis, v));
}

inline FockEnsemble sample_with_fixed_first(const WeightVector& w, const PureState& psi1, std::uint64_t seed) {
  Rng rng(seed);
  return sample_with_fixed_first(w, psi1, rng);
}

/// Haar-distributed unitary via QR of a Ginibre matrix with the phase fix.
inline CMatrix haar_unitary(int n, Rng& rng) {
  CMatrix g(n, n);
  for (int j = 0; j < n; ++j) g.col(j) = complex_gaussian(n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

inline CMatrix rotated_diagonal(const CMatrix& u, const std::vector<double>& diag) {
  Eigen::VectorXd dv = Eigen::Map<const Eigen::VectorXd>(diag.data(), static_cast<Eigen::Index>(diag.size()));
  return u * dv.cast<Complex>().asDiagonal() * u.adjoint();
}

/// Convex combination of 1-3 random rank-N projectors: a random element of
/// the ensemble-representable (Pauli) set.
inline CMatrix random_slater_mixture(int N, int d, Rng& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::exponential_distribution<double> ex(1.0);
  const int m = count(rng);
  std::vector<double> c(static_cast<std::size_t>(m));
  double total = 0;
  for (auto& x : c) total += (x = ex(rng));
  std::vector<double> occ(static_cast<std::size_t>(d), 0.0);
  std::fill(occ.begin(), occ.begin() + N, 1.0);
  CMatrix g = CMatrix::Zero(d, d);
  for (int j = 0; j < m; ++j) g += (c[static_cast<std::size_t>(j)] / total) * rotated_diagonal(haar_unitary(d, rng), occ);
  return g;
}

/// Spectrum of w u D(λ1) u† + (1 - w) γ̃ with u Haar and γ̃ a random Slater mixture.
inline std::vector<double> mixed_fixed_first_sample(int N, int d, double w, const OccupationVector& lambda1,
                                                    Rng& rng) {
  if (lambda1.dimension() != d || lambda1.particle_number() != N) throw InputError("mixed sampler: N or d mismatch");
  if (!(w >= 0 && w <= 1)) throw InputError("mixed sampler: weight outside [0, 1]");
  CMatrix g = w * rotated_diagonal(haar_unitary(d, rng), lambda1.sorted());
  if (w < 1) g += (1 - w) * random_slater_mixture(N, d, rng);
  return hermitian_spectrum(g);
}

inline std::vector<std::vector<double>> mixed_fixed_first_sampler(int N, int d, double w,
                                                                  const OccupationVector& lambda1,
                                                                  std::size_t samples, std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    auto rng = sample_rng(seed, i);
    out.push_back(mixed_fixed_first_sample(N, d, w, lambda1, rng));
  }
  return out;
}

/// Spectrum of U1 D(x) U1† + U2 D(y) U2†.
inline std::vector<double> horn_oracle_sample(const std::vector<double>& x, const std::vector<double>& y, Rng& rng) {
  if (x.size() != y.size()) throw InputError("horn_oracle: x and y differ in length");
  if (x.size() > 8) throw CapabilityError("horn_oracle: d = " + std::to_string(x.size()) + " > 8");
  const int d = static_cast<int>(x.size());
  return hermitian_spectrum(rotated_diagonal(haar_unitary(d, rng), x) + rotated_diagonal(haar_unitary(d, rng), y));
}

inline std::vector<std::vector<double>> horn_oracle(const std::vector<double>& x, const std::vector<double>& y,
                                                    std::size_t samples, std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    auto rng = sample_rng(seed, i);
    out.push_back(horn_oracle_sample(x, y, rng));
  }
  return out;
}

inline double prefix_sum(const std::vector<double>& sorted, int k) {
  double s = 0;
  for (int i = 0; i < k; ++i) s += sorted[static_cast<std::size_t>(i)];
  return s;
}

/// Local refinement of an ensemble: perturb one state at a time by a small
/// random vector, re-orthonormalize and keep the move when the objective grows.
inline FockEnsemble refine_ensemble(const FockEnsemble& start,
                                    const std::function<double(const std::vector<double>&)>& objective,
                                    int iterations, std::uint64_t seed, double step = 0.3) {
  Rng rng(seed);
  const auto& basis = start.states().front().basis_ptr();
  std::vector<CVector> cur;
  for (const auto& s : start.states()) cur.push_back(s.amplitudes());
  auto value = [&](std::vector<CVector> v) {
    return objective(ensemble_onerdm(FockEnsemble(start.weights(), detail::wrap(basis, v))).spectrum);
  };
  double best = value(cur);
  std::uniform_int_distribution<std::size_t> pick(0, cur.size() - 1);
  int streak = 0;
  for (int it = 0; it < iterations && step > 1e-6; ++it) {
    auto trial = cur;
    const std::size_t i = pick(rng);
    trial[i] += step * complex_gaussian(trial[i].size(), rng) / std::sqrt(static_cast<double>(trial[i].size()));
    // Move the perturbed state to the end so the others stay fixed.
    std::rotate(trial.begin() + static_cast<long>(i), trial.begin() + static_cast<long>(i) + 1, trial.end());
    orthonormalize(trial, cur.size() - 1);
    std::rotate(trial.begin() + static_cast<long>(i), trial.end() - 1, trial.end());
    const double v = value(trial);
    if (v > best) {
      best = v;
      cur = std::move(trial);
      streak = 0;
    } else if (++streak >= 20) {
      step *= 0.5;
      streak = 0;
    }
  }
  return FockEnsemble(start.weights(), detail::wrap(basis, cur));
}

}  // namespace wrep

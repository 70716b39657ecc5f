// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hubbard.hpp
 * @brief Open Hubbard chain at half filling, solved exactly in the singlet sector.
 *
 * Spin orbital p = 2 * site + spin with spin 0 = up, 1 = down.
 */

#pragma once

#include "wrep/constraints/bounds.hpp"
#include "wrep/errors.hpp"
#include "wrep/fockoracle/basis.hpp"
#include "wrep/fockoracle/parallel.hpp"
#include "wrep/fockoracle/state.hpp"

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace wrep {

inline constexpr int kMaxChainSites = 4;

using RMatrix = Eigen::MatrixXd;

/// Dense matrix of Σ c_{pq} a†_q a_p over the given (p, q, coefficient) terms.
inline RMatrix one_body_operator(const FockBasis& basis, const std::vector<std::tuple<int, int, double>>& terms) {
  const auto n = static_cast<Eigen::Index>(basis.dim());
  RMatrix m = RMatrix::Zero(n, n);
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    for (const auto& [p, q, c] : terms) {
      Mask out = 0;
      const int s = hop(basis.state(i), p, q, out);
      if (s != 0) m(basis.index_of(out), static_cast<Eigen::Index>(i)) += c * s;
    }
  }
  return m;
}

inline RMatrix hubbard_hamiltonian(const FockBasis& basis, int sites, double t, double U) {
  if (basis.orbitals() != 2 * sites) throw InputError("hubbard_hamiltonian: basis must have 2 * sites orbitals");
  std::vector<std::tuple<int, int, double>> hops;
  for (int i = 0; i + 1 < sites; ++i) {
    for (int s = 0; s < 2; ++s) {
      hops.emplace_back(2 * i + s, 2 * (i + 1) + s, -t);
      hops.emplace_back(2 * (i + 1) + s, 2 * i + s, -t);
    }
  }
  RMatrix h = one_body_operator(basis, hops);
  for (std::size_t k = 0; k < basis.dim(); ++k) {
    const Mask m = basis.state(k);
    int doubles = 0;
    for (int i = 0; i < sites; ++i) doubles += ((m >> (2 * i)) & 3u) == 3u;
    h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) += U * doubles;
  }
  return h;
}

/// Orthonormal basis (columns, full Fock dimension) of the S = 0 subspace.
inline RMatrix singlet_subspace(const FockBasis& basis, int sites) {
  std::vector<Eigen::Index> sz0;
  for (std::size_t k = 0; k < basis.dim(); ++k) {
    const Mask m = basis.state(k);
    int up = 0, down = 0;
    for (int i = 0; i < sites; ++i) {
      up += (m >> (2 * i)) & 1u;
      down += (m >> (2 * i + 1)) & 1u;
    }
    if (up == down) sz0.push_back(static_cast<Eigen::Index>(k));
  }
  if (sz0.empty()) throw InputError("singlet_subspace: odd particle number has no singlets");
  std::vector<std::tuple<int, int, double>> raise;
  for (int i = 0; i < sites; ++i) raise.emplace_back(2 * i + 1, 2 * i, 1.0);
  const RMatrix sp = one_body_operator(basis, raise);
  // On Sz = 0, S^2 = S- S+.
  const auto n0 = static_cast<Eigen::Index>(sz0.size());
  RMatrix sp0(static_cast<Eigen::Index>(basis.dim()), n0);
  for (Eigen::Index j = 0; j < n0; ++j) sp0.col(j) = sp.col(sz0[static_cast<std::size_t>(j)]);
  const RMatrix s2 = sp0.transpose() * sp0;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(s2);
  std::vector<Eigen::Index> zero;
  for (Eigen::Index j = 0; j < n0; ++j) {
    if (std::abs(es.eigenvalues()[j]) < 1e-8) zero.push_back(j);
  }
  RMatrix q = RMatrix::Zero(static_cast<Eigen::Index>(basis.dim()), static_cast<Eigen::Index>(zero.size()));
  for (std::size_t c = 0; c < zero.size(); ++c) {
    for (Eigen::Index j = 0; j < n0; ++j) q(sz0[static_cast<std::size_t>(j)], static_cast<Eigen::Index>(c)) =
        es.eigenvectors()(j, zero[c]);
  }
  return q;
}

struct SingletStates {
  std::vector<double> energies;
  std::vector<PureState> states;
};

/// Lowest `count` eigenstates of the chain Hamiltonian within the singlet sector.
inline SingletStates lowest_singlets(int sites, double t, double U, int count = 2) {
  if (sites < 1 || sites > kMaxChainSites) {
    throw CapabilityError("hubbard chain: sites = " + std::to_string(sites) + " outside [1, " +
                          std::to_string(kMaxChainSites) + "]");
  }
  auto basis = std::make_shared<const FockBasis>(sites, 2 * sites);
  const RMatrix q = singlet_subspace(*basis, sites);
  if (q.cols() < count) throw InputError("hubbard chain: singlet sector smaller than the ensemble");
  const RMatrix hs = q.transpose() * hubbard_hamiltonian(*basis, sites, t, U) * q;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(hs);
  SingletStates out;
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd v = q * es.eigenvectors().col(i);
    v.normalize();
    out.energies.push_back(es.eigenvalues()[i]);
    out.states.emplace_back(basis, v.cast<Complex>(), 1e-10);
  }
  return out;
}

struct LatticeScanPoint {
  double U = 0;
  std::vector<double> lambda1;  // spectrum of the ground-state 1RDM
  std::vector<double> lambda;   // spectrum of the ensemble 1RDM
  double residual = 0;          // R_N of lambda
  ResidualBoundReport validated;
  ResidualBoundReport paper;
  bool crossing = false;
};

/// Two-state ensemble (ground, first excited singlet) with weights (w, 1 - w)
/// at each U on the grid; points are evaluated in parallel and returned in grid order.
inline std::vector<LatticeScanPoint> toy_lattice_scan(int sites, const std::vector<double>& U_grid, double w,
                                                      double t = 1.0, unsigned workers = 0) {
  if (U_grid.empty()) throw InputError("toy_lattice_scan: empty grid");
  if (!(w >= 0.5 && w <= 1.0)) throw InputError("toy_lattice_scan: w must lie in [0.5, 1]");
  const int N = sites, d = 2 * sites;
  std::vector<LatticeScanPoint> out(U_grid.size());
  auto run = [&](std::size_t i) {
    auto s = lowest_singlets(sites, t, U_grid[i], 2);
    auto ens = FockEnsemble(WeightVector::pair(w), s.states);
    LatticeScanPoint p;
    p.U = U_grid[i];
    p.lambda1 = hermitian_spectrum(onerdm(s.states[0]));
    p.lambda = ensemble_onerdm(ens).spectrum;
    const auto l1 = to_occupation(p.lambda1, N);
    const auto l = to_occupation(p.lambda, N);
    p.validated = residual_bounds(w, N, d, l1, N, ChiVariant::validated, l);
    p.paper = residual_bounds(w, N, d, l1, N, ChiVariant::paper, l);
    p.residual = *p.validated.residual_value;
    p.crossing = crossing_condition(w, N, l1);
    out[i] = std::move(p);
  };
  parallel_for(U_grid.size(), workers, run);
  return out;
}

}  // namespace wrep

// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file state.hpp
 * @brief N-fermion pure states, ensembles and their one-body reduced matrices.
 */

#pragma once

#include "wrep/errors.hpp"
#include "wrep/fockoracle/basis.hpp"
#include "wrep/spectra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <memory>
#include <vector>

namespace wrep {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

class PureState {
 public:
  PureState(std::shared_ptr<const FockBasis> basis, CVector amplitudes, double tol = 1e-12)
      : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
    if (!basis_) throw InputError("PureState: null basis");
    if (static_cast<std::size_t>(amps_.size()) != basis_->dim()) throw InputError("PureState: amplitude count mismatch");
    if (std::abs(amps_.norm() - 1.0) > tol) throw InputError("PureState: state not normalized");
  }

  /// Slater determinant over the listed (0-based) orbitals.
  static PureState slater(std::shared_ptr<const FockBasis> basis, const std::vector<int>& orbitals) {
    CVector a = CVector::Zero(static_cast<Eigen::Index>(basis->dim()));
    const int i = basis->index_of(slater_mask(orbitals));
    if (i < 0) throw InputError("PureState::slater: wrong particle number");
    a[i] = 1.0;
    return PureState(std::move(basis), std::move(a));
  }

  const FockBasis& basis() const { return *basis_; }
  const std::shared_ptr<const FockBasis>& basis_ptr() const { return basis_; }
  const CVector& amplitudes() const { return amps_; }

 private:
  std::shared_ptr<const FockBasis> basis_;
  CVector amps_;
};

/// γ(p, q) = <ψ| a†_q a_p |ψ>.
inline CMatrix onerdm(const FockBasis& basis, const CVector& c) {
  const int d = basis.orbitals();
  CMatrix g = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const Complex ci = c[static_cast<Eigen::Index>(i)];
    if (ci == Complex(0.0)) continue;
    const Mask m = basis.state(i);
    for (int p = 0; p < d; ++p) {
      if (!(m & (Mask{1} << p))) continue;
      for (int q = 0; q < d; ++q) {
        Mask out = 0;
        const int s = hop(m, p, q, out);
        if (s == 0) continue;
        g(p, q) += std::conj(c[basis.index_of(out)]) * ci * static_cast<double>(s);
      }
    }
  }
  return g;
}

inline CMatrix onerdm(const PureState& psi) { return onerdm(psi.basis(), psi.amplitudes()); }

/// Eigenvalues of a Hermitian matrix in non-increasing order.
inline std::vector<double> hermitian_spectrum(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw InvariantError("hermitian_spectrum: eigen solver failed");
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

inline std::vector<double> diagonal(const CMatrix& m) {
  std::vector<double> v(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) v[static_cast<std::size_t>(i)] = m(i, i).real();
  return v;
}

/// Clamps round-off so the spectrum passes the Pauli validation.
inline OccupationVector to_occupation(std::vector<double> v, int N) {
  for (auto& x : v) x = std::clamp(x, 0.0, 1.0);
  double total = 0;
  for (double x : v) total += x;
  if (std::abs(total - N) > 1e-8) throw InvariantError("to_occupation: trace drifted to " + std::to_string(total));
  return OccupationVector::make(std::move(v), N, 1e-8);
}

class FockEnsemble {
 public:
  FockEnsemble(WeightVector weights, std::vector<PureState> states, double tol = 1e-10)
      : weights_(std::move(weights)), states_(std::move(states)) {
    if (static_cast<int>(states_.size()) != weights_.rank()) {
      throw InputError("FockEnsemble: state count " + std::to_string(states_.size()) + " differs from r = " +
                       std::to_string(weights_.rank()));
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
      for (std::size_t j = 0; j < states_.size(); ++j) {
        const Complex o = states_[i].amplitudes().dot(states_[j].amplitudes());
        if (std::abs(o - Complex(i == j ? 1.0 : 0.0)) > tol) throw InputError("FockEnsemble: states not orthonormal");
      }
    }
  }

  const WeightVector& weights() const { return weights_; }
  const std::vector<PureState>& states() const { return states_; }

 private:
  WeightVector weights_;
  std::vector<PureState> states_;
};

struct EnsembleRdm {
  CMatrix gamma;
  std::vector<double> spectrum;  // non-increasing
};

inline EnsembleRdm ensemble_onerdm(const FockEnsemble& e) {
  const auto& s = e.states();
  const int d = s.front().basis().orbitals();
  EnsembleRdm out{CMatrix::Zero(d, d), {}};
  for (std::size_t i = 0; i < s.size(); ++i) out.gamma += e.weights()[i] * onerdm(s[i]);
  out.spectrum = hermitian_spectrum(out.gamma);
  return out;
}

}  // namespace wrep

// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file basis.hpp
 * @brief Occupation-number basis of the N-fermion space over d orbitals.
 *
 * Orbital p is bit p of a mask. Creation and annihilation signs follow the
 * bit order: a_p picks up (-1) per occupied orbital below p.
 */

#pragma once

#include "wrep/errors.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace wrep {

using Mask = std::uint32_t;

inline constexpr int kMaxOrbitals = 14;

class FockBasis {
 public:
  FockBasis(int N, int d) : N_(N), d_(d) {
    if (N < 1 || N > d || d > kMaxOrbitals) {
      throw CapabilityError("build_basis: need 1 <= N <= d <= " + std::to_string(kMaxOrbitals) + " (got N = " +
                            std::to_string(N) + ", d = " + std::to_string(d) + ")");
    }
    index_.assign(std::size_t{1} << d, -1);
    for (Mask m = 0; m < (Mask{1} << d); ++m) {
      if (std::popcount(m) == N) {
        index_[m] = static_cast<int>(states_.size());
        states_.push_back(m);
      }
    }
  }

  int particle_number() const { return N_; }
  int orbitals() const { return d_; }
  std::size_t dim() const { return states_.size(); }
  const std::vector<Mask>& states() const { return states_; }
  Mask state(std::size_t i) const { return states_[i]; }
  /// Position of a mask in the basis, or -1 when it is not an N-particle mask.
  int index_of(Mask m) const { return m < index_.size() ? index_[m] : -1; }

 private:
  int N_;
  int d_;
  std::vector<Mask> states_;
  std::vector<int> index_;
};

inline FockBasis build_basis(int N, int d) { return FockBasis(N, d); }

/// Mask of the Slater determinant occupying the given (0-based) orbitals.
inline Mask slater_mask(const std::vector<int>& orbitals) {
  Mask m = 0;
  for (int p : orbitals) m |= Mask{1} << p;
  return m;
}

/// Sign and target of a†_q a_p |m>; returns 0 when the result vanishes.
inline int hop(Mask m, int p, int q, Mask& out) {
  const Mask bp = Mask{1} << p, bq = Mask{1} << q;
  if (!(m & bp)) return 0;
  if (p == q) {
    out = m;
    return 1;
  }
  if (m & bq) return 0;
  const int lo = p < q ? p : q, hi = p < q ? q : p;
  const Mask between = m & (((Mask{1} << hi) - 1) & ~((Mask{1} << (lo + 1)) - 1));
  out = (m & ~bp) | bq;
  return (std::popcount(between) & 1) ? -1 : 1;
}

}  // namespace wrep

// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file horn.hpp
 * @brief Horn inequalities for Z = X + Y at d <= 3, Ky Fan rows, and the
 *        relaxed body obtained when spec(Y) ranges over the Pauli simplex.
 *
 * A Horn row is stored symbolically as index patterns:
 *
 *   sense * Σ_{i∈I} z_i <= sense * (Σ_{j∈J} x_j + Σ_{l∈L} y_l)
 *
 * with sense = +1 for upper and -1 for lower bounds. Binding x = w λ1 and
 * y = (1 - w) λ2 gives the ensemble decomposition γ = w γ1 + (1 - w) γ2.
 */

#pragma once

#include "wrep/constraints/sigma_w.hpp"
#include "wrep/errors.hpp"
#include "wrep/polytope.hpp"
#include "wrep/spectra.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace wrep {

struct HornRow {
  int sense = 1;
  std::vector<int> lhs;  // 0/1 pattern on z
  std::vector<int> x;    // 0/1 pattern on x
  std::vector<int> y;    // 0/1 pattern on y
  std::string label;
};

/// The twelve inequalities for d = 3, in the customary order.
inline const std::vector<HornRow>& horn_rows_d3() {
  static const std::vector<HornRow> rows = {
      {1, {1, 0, 0}, {1, 0, 0}, {1, 0, 0}, "A:row1"},  {1, {0, 1, 0}, {1, 0, 0}, {0, 1, 0}, "A:row2"},
      {1, {0, 1, 0}, {0, 1, 0}, {1, 0, 0}, "A:row3"},  {1, {0, 0, 1}, {1, 0, 0}, {0, 0, 1}, "A:row4"},
      {1, {0, 0, 1}, {0, 0, 1}, {1, 0, 0}, "A:row5"},  {1, {0, 0, 1}, {0, 1, 0}, {0, 1, 0}, "A:row6"},
      {1, {1, 1, 0}, {1, 1, 0}, {1, 1, 0}, "A:row7"},  {1, {1, 0, 1}, {1, 0, 1}, {1, 1, 0}, "A:row8"},
      {1, {0, 1, 1}, {0, 1, 1}, {1, 1, 0}, "A:row9"},  {1, {1, 0, 1}, {1, 1, 0}, {1, 0, 1}, "A:row10"},
      {1, {0, 1, 1}, {1, 1, 0}, {0, 1, 1}, "A:row11"}, {1, {0, 1, 1}, {1, 0, 1}, {1, 0, 1}, "A:row12"},
  };
  return rows;
}

/// The six inequalities for d = 2: Weyl upper bounds and their lower
/// counterparts.
inline const std::vector<HornRow>& horn_rows_d2() {
  static const std::vector<HornRow> rows = {
      {1, {1, 0}, {1, 0}, {1, 0}, "H2:row1"},  {1, {0, 1}, {1, 0}, {0, 1}, "H2:row2"},
      {1, {0, 1}, {0, 1}, {1, 0}, "H2:row3"},  {-1, {0, 1}, {0, 1}, {0, 1}, "H2:row4"},
      {-1, {1, 0}, {1, 0}, {0, 1}, "H2:row5"}, {-1, {1, 0}, {0, 1}, {1, 0}, "H2:row6"},
  };
  return rows;
}

inline const std::vector<HornRow>& horn_rows(int d) {
  if (d == 2) return horn_rows_d2();
  if (d == 3) return horn_rows_d3();
  throw CapabilityError("Horn inequalities are listed for d = 2 and d = 3 only (got d = " + std::to_string(d) +
                        "); use ky_fan_rows for larger d");
}

/// One line per row: "label: s*[lhs] <= s*(x[..] + y[..])".
inline std::string horn_symbolic_text(int d) {
  std::ostringstream os;
  auto pat = [&](const std::vector<int>& p) {
    os << '[';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ']';
  };
  for (const auto& r : horn_rows(d)) {
    os << r.label << ": " << (r.sense > 0 ? "+" : "-") << "z";
    pat(r.lhs);
    os << " <= " << (r.sense > 0 ? "+" : "-") << "(x";
    pat(r.x);
    os << " + y";
    pat(r.y);
    os << ")\n";
  }
  return os.str();
}

namespace detail {

template <Scalar T>
BasicHRep<T> horn_hrep_impl(int d, std::span<const T> x, std::span<const T> y) {
  if (x.size() != static_cast<std::size_t>(d) || y.size() != static_cast<std::size_t>(d)) {
    throw InputError("horn_hrep: expected vectors of length " + std::to_string(d));
  }
  if (!is_non_increasing(x) || !is_non_increasing(y)) throw InputError("horn_hrep: x and y must be sorted");
  const auto& rows = horn_rows(d);
  BasicHRep<T> h;
  h.dimension = static_cast<std::size_t>(d);
  T total(0);
  for (std::size_t i = 0; i < h.dimension; ++i) total += x[i] + y[i];
  h.sum = total;
  for (const auto& r : rows) {
    std::vector<T> a(h.dimension);
    T b(0);
    for (std::size_t i = 0; i < h.dimension; ++i) {
      a[i] = T(r.sense * r.lhs[i]);
      b += T(r.sense * r.x[i]) * x[i] + T(r.sense * r.y[i]) * y[i];
    }
    h.add(std::move(a), std::move(b), r.label);
  }
  return h;
}

}  // namespace detail

template <Scalar T>
BasicHRep<T> horn_hrep_d3(std::span<const T> x, std::span<const T> y) {
  return detail::horn_hrep_impl<T>(3, x, y);
}

inline HRep horn_hrep_d3(const std::vector<double>& x, const std::vector<double>& y) {
  return horn_hrep_d3<double>(std::span<const double>(x), std::span<const double>(y));
}

template <Scalar T>
BasicHRep<T> horn_hrep_d2(std::span<const T> x, std::span<const T> y) {
  return detail::horn_hrep_impl<T>(2, x, y);
}

inline HRep horn_hrep_d2(const std::vector<double>& x, const std::vector<double>& y) {
  return horn_hrep_d2<double>(std::span<const double>(x), std::span<const double>(y));
}

/// Horn rows with x = w λ1 fixed and y = (1 - w) μ as free template.
template <Scalar T>
std::vector<AffineInequality<T>> horn_templates(int d, T w) {
  std::vector<AffineInequality<T>> out;
  for (const auto& r : horn_rows(d)) {
    AffineInequality<T> t;
    for (int i = 0; i < d; ++i) {
      t.coeffs.push_back(T(r.sense * r.lhs[i]));
      t.fixed_coeffs.push_back(T(r.sense * r.x[i]) * w);
      t.free_coeffs.push_back(T(r.sense * r.y[i]) * T(T(1) - w));
    }
    t.constant = T(0);
    t.label = r.label;
    out.push_back(std::move(t));
  }
  return out;
}

/// Prefix rows Σ_{i<=k} z_i <= Σ_{i<=k} (w x_i + (1-w) μ_i), k = 1..d.
template <Scalar T>
std::vector<AffineInequality<T>> ky_fan_rows(int d, T w) {
  if (d < 1) throw InputError("ky_fan_rows: d must be positive");
  std::vector<AffineInequality<T>> out;
  for (int k = 1; k <= d; ++k) {
    AffineInequality<T> t;
    for (int i = 0; i < d; ++i) {
      const T on = i < k ? T(1) : T(0);
      t.coeffs.push_back(on);
      t.fixed_coeffs.push_back(on * w);
      t.free_coeffs.push_back(on * T(T(1) - w));
    }
    t.constant = T(0);
    t.label = "B3:k=" + std::to_string(k);
    out.push_back(std::move(t));
  }
  return out;
}

namespace detail {

template <Scalar T>
bool prefix_nonnegative(const std::vector<T>& v) {
  T acc(0);
  const T tol = ScalarTraits<T>::exact ? T(0) : T(1e-12);
  for (const auto& x : v) {
    acc += x;
    if (acc < -tol) return false;
  }
  return true;
}

template <Scalar T>
bool same_vector(const std::vector<T>& a, const std::vector<T>& b) {
  const T tol = ScalarTraits<T>::exact ? T(0) : T(1e-12);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (abs_of(T(a[i] - b[i])) > tol) return false;
  }
  return true;
}

// Row a is implied by the rows in `by` (summed) for every sorted,
// nonnegative fixed spectrum when the left-hand sides agree, the fixed
// coefficients of a dominate in prefix order and the constant of a is no
// smaller.
template <Scalar T>
bool dominated(const RelaxedInequality<T>& a, const std::vector<const RelaxedInequality<T>*>& by) {
  const std::size_t d = a.coeffs.size();
  std::vector<T> lhs(d, T(0)), diff = a.fixed_coeffs;
  T c(0);
  for (const auto* b : by) {
    for (std::size_t i = 0; i < d; ++i) {
      lhs[i] += b->coeffs[i];
      diff[i] -= b->fixed_coeffs[i];
    }
    c += b->constant;
  }
  const T tol = ScalarTraits<T>::exact ? T(0) : T(1e-12);
  return same_vector(lhs, a.coeffs) && prefix_nonnegative(diff) && !(c > a.constant + tol);
}

}  // namespace detail

/// Removes rows implied by one other kept row or by the sum of two kept
/// rows, uniformly in the fixed spectrum. Rows are visited in order.
template <Scalar T>
std::vector<std::size_t> symbolic_reduce(const std::vector<RelaxedInequality<T>>& rows) {
  std::vector<bool> kept(rows.size(), true);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    bool drop = false;
    for (std::size_t b = 0; b < rows.size() && !drop; ++b) {
      if (b == a || !kept[b]) continue;
      drop = detail::dominated(rows[a], {&rows[b]});
      for (std::size_t c = b + 1; c < rows.size() && !drop; ++c) {
        if (c == a || !kept[c]) continue;
        drop = detail::dominated(rows[a], {&rows[b], &rows[c]});
      }
    }
    if (drop) kept[a] = false;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (kept[i]) out.push_back(i);
  }
  return out;
}

/// Relaxed Horn body: rows whose RHS depends on the fixed spectrum only.
template <Scalar T>
struct LambdaHSystem {
  std::vector<RelaxedInequality<T>> rows;  // labels "A5:rowI" (d = 3) or "LH2:rowI" (d = 2)
  std::vector<std::string> sources;        // Horn row each survivor came from
};

template <Scalar T>
LambdaHSystem<T> lambda_h_system(T w, int N, int d) {
  if (d > 3) {
    throw CapabilityError("lambda_h: d = " + std::to_string(d) +
                          " > 3 has no Horn list here; use ky_fan_rows with relax_rhs for a valid outer body");
  }
  if (d < 2) throw CapabilityError("lambda_h: d must be 2 or 3");
  if (N < 1 || N > d) throw InputError("lambda_h: need 1 <= N <= d");
  if (w < T(0) || w > T(1)) throw InputError("lambda_h: weight outside [0, 1]");
  std::vector<T> hf(static_cast<std::size_t>(d), T(0));
  for (int i = 0; i < N; ++i) hf[static_cast<std::size_t>(i)] = T(1);
  const auto relaxed = relax_rhs(horn_templates<T>(d, w), BasicPermutohedron<T>(hf));
  LambdaHSystem<T> out;
  const std::string prefix = d == 3 ? "A5:row" : "LH2:row";
  for (std::size_t i : symbolic_reduce(relaxed)) {
    out.sources.push_back(relaxed[i].label);
    auto row = relaxed[i];
    row.label = prefix + std::to_string(out.rows.size() + 1);
    out.rows.push_back(std::move(row));
  }
  return out;
}

template <Scalar T>
BasicHRep<T> lambda_h_hrep_t(T w, std::span<const T> lambda1_sorted, int N) {
  const int d = static_cast<int>(lambda1_sorted.size());
  auto sys = lambda_h_system<T>(w, N, d);
  return bind_fixed(sys.rows, lambda1_sorted, T(N));
}

inline HRep lambda_h_hrep(double w, const OccupationVector& lambda1, int N, int d) {
  if (lambda1.dimension() != d || lambda1.particle_number() != N) throw InputError("lambda_h_hrep: N or d mismatch");
  return lambda_h_hrep_t<double>(w, std::span<const double>(lambda1.sorted()), N);
}

/// Λ↓ = Λ_H↓ ∩ Σ(w), optionally with LP-redundant rows removed.
inline HRep lambda_down_hrep(double w, const OccupationVector& lambda1, int N, int d, bool prune = false) {
  auto h = intersect(lambda_h_hrep(w, lambda1, N, d), sigma_w_hrep_t<double>(N, d, w));
  if (!is_feasible(h)) throw InvariantError("lambda_down_hrep: empty body");
  return prune ? prune_redundant(h) : h;
}

}  // namespace wrep

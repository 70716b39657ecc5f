// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file polytope.hpp
 * @brief Polytopes of decreasingly ordered spectra.
 *
 * Two representations are used throughout:
 *
 *  - BasicHRep: linear inequalities a.λ↓ <= b plus the trace equality
 *    Σλ = S, read on the sorted sector λ1 >= ... >= λd.
 *  - BasicPermutohedron: conv{π(v) : π ∈ S_d} given by its sorted
 *    generator v. Its sorted sector is {λ↓ : λ↓ ≺ v}.
 *
 * All LP-based operations optimize over HRep ∩ (sorted cone) ∩ (trace).
 */

#pragma once

#include "wrep/errors.hpp"
#include "wrep/lp.hpp"
#include "wrep/scalar.hpp"
#include "wrep/spectra.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace wrep {

template <Scalar T>
struct LinearInequality {
  std::vector<T> coeffs;
  T rhs{};
  std::string label;

  T lhs(std::span<const T> lambda_sorted) const {
    T acc(0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i] * lambda_sorted[i];
    return acc;
  }
  /// Residual b - a.λ↓; negative means violated.
  T slack(std::span<const T> lambda_sorted) const { return rhs - lhs(lambda_sorted); }
};

template <Scalar T>
struct BasicHRep {
  std::size_t dimension = 0;
  T sum{};
  std::vector<LinearInequality<T>> rows;

  void add(std::vector<T> a, T b, std::string label) {
    if (a.size() != dimension) throw InputError("HRep: coefficient length mismatch for row '" + label + "'");
    if (label.empty()) throw InputError("HRep: rows must carry a label");
    rows.push_back({std::move(a), std::move(b), std::move(label)});
  }
};

using HRep = BasicHRep<double>;
using ExactHRep = BasicHRep<Rational>;

template <Scalar T>
class BasicPermutohedron {
 public:
  BasicPermutohedron() = default;
  /// The generator is sorted on construction.
  explicit BasicPermutohedron(std::vector<T> generator) : generator_(sorted_desc(std::move(generator))) {}

  const std::vector<T>& generator() const { return generator_; }
  std::size_t dimension() const { return generator_.size(); }
  T sum() const { return std::accumulate(generator_.begin(), generator_.end(), T(0)); }

 private:
  std::vector<T> generator_;
};

using Permutohedron = BasicPermutohedron<double>;

/// Prefix-sum description of a permutohedron (Rado's theorem).
template <Scalar T>
BasicHRep<T> rado_hrep(const BasicPermutohedron<T>& p, const std::string& label_prefix = "Rado") {
  const std::size_t d = p.dimension();
  BasicHRep<T> h;
  h.dimension = d;
  h.sum = p.sum();
  T acc(0);
  for (std::size_t k = 1; k < d; ++k) {
    acc += p.generator()[k - 1];
    std::vector<T> a(d, T(0));
    std::fill(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k), T(1));
    h.add(std::move(a), acc, label_prefix + ":k=" + std::to_string(k));
  }
  return h;
}

inline constexpr std::size_t kMaxOrbitDimension = 8;

/// Distinct coordinate permutations of the generator, generated as multiset
/// permutations so repeated values never produce duplicates.
template <Scalar T>
std::vector<std::vector<T>> orbit_vertices(const BasicPermutohedron<T>& p) {
  if (p.dimension() > kMaxOrbitDimension) {
    throw CapabilityError("orbit_vertices: d = " + std::to_string(p.dimension()) + " exceeds " +
                          std::to_string(kMaxOrbitDimension) + "; use the H-representation (rado_hrep) instead");
  }
  std::vector<T> v = p.generator();
  std::sort(v.begin(), v.end());
  std::vector<std::vector<T>> out;
  do {
    out.push_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

template <Scalar T>
struct RowSlack {
  std::size_t row = 0;
  std::string label;
  T margin{};
};

template <Scalar T>
struct MembershipVerdict {
  bool member = false;
  std::vector<RowSlack<T>> violations;
  std::vector<T> slacks;  // one per row, b - a.λ↓
  T sum_error{};          // Σλ - S
  std::vector<T> sorted_point;
};

/// Sorts the point, then evaluates every row and the trace equality.
template <Scalar T>
MembershipVerdict<T> membership(const BasicHRep<T>& h, std::span<const T> lambda, T tol = tolerance_of<T>()) {
  if (lambda.size() != h.dimension) throw InputError("membership: dimension mismatch");
  MembershipVerdict<T> v;
  v.sorted_point = sorted_desc(std::vector<T>(lambda.begin(), lambda.end()));
  T total(0);
  for (const auto& x : v.sorted_point) total += x;
  v.sum_error = total - h.sum;
  v.member = abs_of(v.sum_error) <= tol;
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    const T s = h.rows[i].slack(v.sorted_point);
    v.slacks.push_back(s);
    if (s < -tol) {
      v.member = false;
      v.violations.push_back({i, h.rows[i].label, s});
    }
  }
  return v;
}

inline MembershipVerdict<double> membership(const HRep& h, const OccupationVector& lambda, double tol = kTolerance) {
  return membership<double>(h, std::span<const double>(lambda.entries()), tol);
}

inline MembershipVerdict<double> membership(const HRep& h, const std::vector<double>& lambda,
                                            double tol = kTolerance) {
  return membership<double>(h, std::span<const double>(lambda), tol);
}

/// Support function of the full (symmetrized) permutohedron: pair sorted c
/// with the sorted generator.
template <Scalar T>
T support_max(const BasicPermutohedron<T>& p, std::span<const T> c) {
  if (c.size() != p.dimension()) throw InputError("support_max: dimension mismatch");
  auto cs = sorted_desc(std::vector<T>(c.begin(), c.end()));
  T acc(0);
  for (std::size_t i = 0; i < cs.size(); ++i) acc += cs[i] * p.generator()[i];
  return acc;
}

namespace detail {

// Sorted-sector LP over the rows of h (optionally skipping one row).
template <Scalar T>
LpProblem<T> sector_lp(const BasicHRep<T>& h, std::span<const T> c, std::optional<std::size_t> skip = std::nullopt) {
  const std::size_t d = h.dimension;
  LpProblem<T> lp;
  lp.num_vars = d;
  lp.objective.assign(c.begin(), c.end());
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    if (skip && *skip == i) continue;
    lp.add_le(h.rows[i].coeffs, h.rows[i].rhs);
  }
  for (std::size_t i = 0; i + 1 < d; ++i) {
    std::vector<T> a(d, T(0));
    a[i] = T(-1);
    a[i + 1] = T(1);
    lp.add_le(std::move(a), T(0));
  }
  lp.add_eq(std::vector<T>(d, T(1)), h.sum);
  return lp;
}

}  // namespace detail

template <Scalar T>
struct SupportResult {
  T value{};
  std::vector<T> argmax;
};

/// Maximum of c.λ over the sorted sector of an HRep, by linear programming.
template <Scalar T>
SupportResult<T> support_argmax(const BasicHRep<T>& h, std::span<const T> c) {
  if (c.size() != h.dimension) throw InputError("support_max: dimension mismatch");
  auto res = solve_lp(detail::sector_lp(h, c));
  if (res.status == LpStatus::infeasible) throw InputError("support_max: infeasible body");
  if (res.status == LpStatus::unbounded) throw InvariantError("support_max: unbounded body");
  return {res.value, res.x};
}

template <Scalar T>
T support_max(const BasicHRep<T>& h, std::span<const T> c) {
  return support_argmax(h, c).value;
}

inline double support_max(const HRep& h, const std::vector<double>& c) {
  return support_max<double>(h, std::span<const double>(c));
}
inline double support_max(const Permutohedron& p, const std::vector<double>& c) {
  return support_max<double>(p, std::span<const double>(c));
}

/// Maximum of c.μ over the sorted sector {μ↓ ≺ v} of a permutohedron in
/// closed form: the sector's vertices are the block averages of v over the
/// compositions of d into consecutive blocks.
template <Scalar T>
SupportResult<T> sector_support_argmax(const BasicPermutohedron<T>& p, std::span<const T> c) {
  const std::size_t d = p.dimension();
  if (c.size() != d) throw InputError("sector_support_max: dimension mismatch");
  if (d == 0) return {T(0), {}};
  if (d > 20) throw CapabilityError("sector_support_max: d too large for block enumeration");
  const auto& v = p.generator();
  SupportResult<T> best;
  bool have = false;
  const std::size_t masks = std::size_t{1} << (d - 1);
  std::vector<T> point(d);
  for (std::size_t mask = 0; mask < masks; ++mask) {
    // bit i set: a block boundary after position i
    std::size_t start = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const bool boundary = (i + 1 == d) || ((mask >> i) & 1U);
      if (!boundary) continue;
      T block(0);
      for (std::size_t j = start; j <= i; ++j) block += v[j];
      const T mean = block / T(static_cast<int>(i + 1 - start));
      for (std::size_t j = start; j <= i; ++j) point[j] = mean;
      start = i + 1;
    }
    T val(0);
    for (std::size_t i = 0; i < d; ++i) val += c[i] * point[i];
    if (!have || val > best.value) {
      best.value = val;
      best.argmax = point;
      have = true;
    }
  }
  return best;
}

template <Scalar T>
T sector_support_max(const BasicPermutohedron<T>& p, std::span<const T> c) {
  return sector_support_argmax(p, c).value;
}

/// Row-wise concatenation. Sum constraints must agree.
template <Scalar T>
BasicHRep<T> intersect(const BasicHRep<T>& h1, const BasicHRep<T>& h2, T tol = tolerance_of<T>()) {
  if (h1.dimension != h2.dimension) throw InputError("intersect: dimension mismatch");
  if (abs_of(T(h1.sum - h2.sum)) > tol) throw InputError("intersect: conflicting sum constraints");
  BasicHRep<T> out = h1;
  out.rows.insert(out.rows.end(), h2.rows.begin(), h2.rows.end());
  return out;
}

template <Scalar T>
bool is_feasible(const BasicHRep<T>& h) {
  std::vector<T> zero(h.dimension, T(0));
  return solve_lp(detail::sector_lp<T>(h, zero)).status != LpStatus::infeasible;
}

/// Deterministic direction sample used to compare bodies: the prefix
/// indicators, the coordinate vectors and pseudo-random directions.
inline std::vector<std::vector<double>> probe_directions(std::size_t d, std::size_t random_count = 24,
                                                         std::uint64_t seed = 0x5eedULL) {
  std::vector<std::vector<double>> dirs;
  for (std::size_t k = 1; k <= d; ++k) {
    std::vector<double> c(d, 0.0);
    std::fill(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k), 1.0);
    dirs.push_back(c);
    std::vector<double> neg(d, 0.0);
    for (std::size_t i = 0; i < k; ++i) neg[i] = -1.0;
    dirs.push_back(neg);
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> e(d, 0.0);
    e[i] = 1.0;
    dirs.push_back(e);
    e[i] = -1.0;
    dirs.push_back(e);
  }
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t s = 0; s < random_count; ++s) {
    std::vector<double> c(d);
    for (auto& x : c) x = u(gen);
    dirs.push_back(c);
  }
  return dirs;
}

/// Removes rows implied by the remaining ones. Rows are visited in order;
/// a row is dropped when the maximum of its left-hand side over the other
/// kept rows (sorted cone and trace included) does not exceed its RHS by
/// more than the tolerance.
template <Scalar T>
BasicHRep<T> prune_redundant(const BasicHRep<T>& h, T tol = tolerance_of<T>()) {
  if (!is_feasible(h)) throw InputError("prune_redundant: infeasible input set");
  std::vector<bool> kept(h.rows.size(), true);
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    BasicHRep<T> others;
    others.dimension = h.dimension;
    others.sum = h.sum;
    for (std::size_t j = 0; j < h.rows.size(); ++j) {
      if (j != i && kept[j]) others.rows.push_back(h.rows[j]);
    }
    auto res = solve_lp(detail::sector_lp<T>(others, std::span<const T>(h.rows[i].coeffs)));
    if (res.status == LpStatus::optimal && !(res.value > h.rows[i].rhs + tol)) kept[i] = false;
  }
  BasicHRep<T> out;
  out.dimension = h.dimension;
  out.sum = h.sum;
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    if (kept[i]) out.rows.push_back(h.rows[i]);
  }
  if constexpr (!ScalarTraits<T>::exact) {
    for (const auto& c : probe_directions(h.dimension)) {
      const double a = support_max<double>(h, c);
      const double b = support_max<double>(out, c);
      if (std::abs(a - b) > 1e-8 * std::max(1.0, std::abs(a))) {
        throw InvariantError("prune_redundant: pruned set differs from input");
      }
    }
  }
  return out;
}

template <Scalar T>
BasicPermutohedron<T> minkowski_sum(const BasicPermutohedron<T>& p1, const BasicPermutohedron<T>& p2) {
  if (p1.dimension() != p2.dimension()) throw InputError("minkowski_sum: dimension mismatch");
  std::vector<T> g(p1.dimension());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = p1.generator()[i] + p2.generator()[i];
  return BasicPermutohedron<T>(std::move(g));
}

template <Scalar T>
BasicPermutohedron<T> scale(const BasicPermutohedron<T>& p, T s) {
  if (s < T(0)) throw InputError("scale: negative factor");
  std::vector<T> g = p.generator();
  for (auto& x : g) x *= s;
  return BasicPermutohedron<T>(std::move(g));
}

/// Inequality whose right-hand side is affine in a known sorted spectrum x↓
/// and an unknown sorted spectrum μ↓:
///   coeffs.λ↓ <= fixed_coeffs.x↓ + free_coeffs.μ↓ + constant
template <Scalar T>
struct AffineInequality {
  std::vector<T> coeffs;
  std::vector<T> fixed_coeffs;
  std::vector<T> free_coeffs;
  T constant{};
  std::string label;
};

/// Result of maximizing the μ-dependent part of an AffineInequality.
/// free_coeffs are folded into constant; maximizer records the argmax μ↓.
template <Scalar T>
struct RelaxedInequality {
  std::vector<T> coeffs;
  std::vector<T> fixed_coeffs;
  T constant{};
  std::vector<T> maximizer;
  std::string label;

  std::string provenance() const {
    std::vector<double> m;
    for (const auto& x : maximizer) m.push_back(to_double(x));
    return label + " @ mu=" + format_vector(m);
  }
};

/// Replaces each template RHS by its maximum over μ↓ in the sorted sector
/// of the free body (closed form for a permutohedron).
template <Scalar T>
std::vector<RelaxedInequality<T>> relax_rhs(const std::vector<AffineInequality<T>>& templates,
                                            const BasicPermutohedron<T>& free_body) {
  std::vector<RelaxedInequality<T>> out;
  for (const auto& t : templates) {
    auto s = sector_support_argmax(free_body, std::span<const T>(t.free_coeffs));
    out.push_back({t.coeffs, t.fixed_coeffs, T(t.constant + s.value), std::move(s.argmax), t.label});
  }
  return out;
}

/// Same relaxation with the free body given as an HRep (one LP per row).
template <Scalar T>
std::vector<RelaxedInequality<T>> relax_rhs(const std::vector<AffineInequality<T>>& templates,
                                            const BasicHRep<T>& free_body) {
  if (!is_feasible(free_body)) throw InputError("relax_rhs: infeasible free body");
  std::vector<RelaxedInequality<T>> out;
  for (const auto& t : templates) {
    auto s = support_argmax(free_body, std::span<const T>(t.free_coeffs));
    out.push_back({t.coeffs, t.fixed_coeffs, T(t.constant + s.value), std::move(s.argmax), t.label});
  }
  return out;
}

/// Substitutes the known spectrum into relaxed rows.
template <Scalar T>
BasicHRep<T> bind_fixed(const std::vector<RelaxedInequality<T>>& rows, std::span<const T> fixed_sorted, T sum) {
  BasicHRep<T> h;
  h.dimension = fixed_sorted.size();
  h.sum = sum;
  for (const auto& r : rows) {
    if (r.fixed_coeffs.size() != fixed_sorted.size()) throw InputError("bind_fixed: dimension mismatch");
    T b = r.constant;
    for (std::size_t i = 0; i < fixed_sorted.size(); ++i) b += r.fixed_coeffs[i] * fixed_sorted[i];
    h.add(r.coeffs, b, r.label);
  }
  return h;
}

}  // namespace wrep

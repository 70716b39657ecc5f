// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spectra.hpp
 * @brief Occupation and weight vectors, sorting and majorization.
 *
 * Every polytope in this library is stated on decreasingly ordered spectra.
 * The types here validate the Pauli and normalization invariants once, at
 * construction, and keep both the raw entries and the sorted view.
 */

#pragma once

#include "wrep/errors.hpp"
#include "wrep/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace wrep {

/// Sorted values together with the permutation that produced them:
/// `values[i] == input[permutation[i]]`.
struct SortResult {
  std::vector<double> values;
  std::vector<std::size_t> permutation;
};

/// Stable non-increasing sort. Ties keep their original relative order.
inline SortResult sort_desc(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw InputError("sort_desc: non-finite entry");
  }
  SortResult out;
  out.permutation.resize(v.size());
  std::iota(out.permutation.begin(), out.permutation.end(), std::size_t{0});
  std::stable_sort(out.permutation.begin(), out.permutation.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  out.values.reserve(v.size());
  for (std::size_t i : out.permutation) out.values.push_back(v[i]);
  return out;
}

template <Scalar T>
std::vector<T> sorted_desc(std::vector<T> v) {
  std::stable_sort(v.begin(), v.end(), [](const T& a, const T& b) { return a > b; });
  return v;
}

template <Scalar T>
bool is_non_increasing(std::span<const T> v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1]) return false;
  }
  return true;
}

/// k-prefix sums of a sorted sequence, k = 1..d.
template <Scalar T>
std::vector<T> partial_sums(std::span<const T> v_sorted) {
  if (!is_non_increasing(v_sorted)) throw InputError("partial_sums: input not sorted non-increasing");
  std::vector<T> out(v_sorted.size());
  T acc(0);
  for (std::size_t i = 0; i < v_sorted.size(); ++i) {
    acc += v_sorted[i];
    out[i] = acc;
  }
  return out;
}

inline std::vector<double> partial_sums(const std::vector<double>& v_sorted) {
  return partial_sums<double>(std::span<const double>(v_sorted));
}

inline std::string format_vector(std::span<const double> v) {
  std::ostringstream os;
  os.precision(12);
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

/// Natural occupation numbers of a 1RDM (or lattice site occupations).
class OccupationVector {
 public:
  /// Validates Pauli bounds and the particle-number normalization.
  static OccupationVector make(std::vector<double> entries, int particle_number,
                               double tol = kTolerance) {
    if (particle_number < 1) throw InputError("OccupationVector: particle number must be positive");
    if (entries.empty()) throw InputError("OccupationVector: empty");
    double total = 0.0;
    for (double x : entries) {
      if (!std::isfinite(x)) throw InputError("OccupationVector: non-finite entry");
      if (x < -tol || x > 1.0 + tol) {
        throw InputError("Pauli constraint violated: entry " + std::to_string(x) + " outside [0, 1] in " +
                         format_vector(entries));
      }
      total += x;
    }
    if (std::abs(total - particle_number) > tol * std::max<double>(1.0, static_cast<double>(entries.size()))) {
      throw InputError("normalization violated: entries sum to " + std::to_string(total) + ", expected N = " +
                       std::to_string(particle_number));
    }
    return OccupationVector(std::move(entries), particle_number);
  }

  /// Hartree-Fock vector (1, ..., 1, 0, ...) with N ones.
  static OccupationVector hartree_fock(int particle_number, int dimension) {
    std::vector<double> v(static_cast<std::size_t>(dimension), 0.0);
    for (int i = 0; i < particle_number && i < dimension; ++i) v[static_cast<std::size_t>(i)] = 1.0;
    return make(std::move(v), particle_number);
  }

  static OccupationVector uniform(int particle_number, int dimension) {
    return make(std::vector<double>(static_cast<std::size_t>(dimension),
                                    static_cast<double>(particle_number) / dimension),
                particle_number);
  }

  const std::vector<double>& entries() const { return entries_; }
  const std::vector<double>& sorted() const { return sorted_.values; }
  const std::vector<std::size_t>& permutation() const { return sorted_.permutation; }
  int particle_number() const { return particle_number_; }
  int dimension() const { return static_cast<int>(entries_.size()); }
  std::vector<double> prefix_sums() const { return partial_sums(sorted_.values); }

 private:
  OccupationVector(std::vector<double> entries, int n)
      : entries_(std::move(entries)), sorted_(sort_desc(entries_)), particle_number_(n) {}

  std::vector<double> entries_;
  SortResult sorted_;
  int particle_number_;
};

/// Decreasingly ordered ensemble weights summing to one.
class WeightVector {
 public:
  static WeightVector make(std::vector<double> entries, double tol = kTolerance) {
    if (entries.empty()) throw InputError("WeightVector: empty");
    double total = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const double x = entries[i];
      if (!std::isfinite(x)) throw InputError("WeightVector: non-finite entry");
      if (x < -tol) throw InputError("WeightVector: negative weight " + std::to_string(x));
      if (i > 0 && x > entries[i - 1] + tol) {
        throw InputError("ordering violated: weights must be non-increasing, got " + format_vector(entries));
      }
      total += x;
    }
    if (std::abs(total - 1.0) > tol * static_cast<double>(entries.size())) {
      throw InputError("weight normalization violated: weights sum to " + std::to_string(total));
    }
    return WeightVector(std::move(entries), tol);
  }

  /// (w, 1 - w) for a two-state ensemble.
  static WeightVector pair(double w) { return make({w, 1.0 - w}); }

  const std::vector<double>& entries() const { return entries_; }
  double operator[](std::size_t i) const { return i < entries_.size() ? entries_[i] : 0.0; }
  /// Number of strictly positive weights.
  int rank() const { return rank_; }
  std::size_t size() const { return entries_.size(); }

 private:
  WeightVector(std::vector<double> entries, double tol) : entries_(std::move(entries)) {
    rank_ = static_cast<int>(std::count_if(entries_.begin(), entries_.end(), [&](double x) { return x > tol; }));
  }

  std::vector<double> entries_;
  int rank_ = 0;
};

/// x ≺ y: every k-prefix sum of sorted x is at most that of sorted y.
inline bool majorizes(std::span<const double> x, std::span<const double> y, double tol = kTolerance) {
  if (x.size() != y.size()) throw InputError("majorizes: dimension mismatch");
  const auto xs = sort_desc(x).values;
  const auto ys = sort_desc(y).values;
  const auto px = partial_sums(xs);
  const auto py = partial_sums(ys);
  if (std::abs(px.back() - py.back()) > tol * static_cast<double>(x.size())) {
    throw InputError("majorizes: vectors have different sums");
  }
  for (std::size_t k = 0; k < px.size(); ++k) {
    if (px[k] > py[k] + tol) return false;
  }
  return true;
}

inline bool majorizes(const OccupationVector& x, const OccupationVector& y, double tol = kTolerance) {
  if (x.particle_number() != y.particle_number() || x.dimension() != y.dimension()) {
    throw InputError("majorizes: mismatched N or d");
  }
  return majorizes(x.entries(), y.entries(), tol);
}

/// Problem description before validation.
struct RawSpec {
  int N = 0;
  int d = 0;
  std::vector<double> weights;
  std::map<int, std::vector<double>> fixed;
};

/// Validated problem instance. Fixed spectra are indexed by ensemble
/// position (1-based) and stored sorted.
struct EnsembleSpec {
  int N = 0;
  int d = 0;
  WeightVector weights = WeightVector::make({1.0});
  std::vector<int> fixed_indices;
  std::map<int, OccupationVector> fixed_spectra;

  int rank() const { return weights.rank(); }
  bool has_fixed(int index) const { return fixed_spectra.count(index) != 0; }
  const OccupationVector& fixed(int index) const {
    auto it = fixed_spectra.find(index);
    if (it == fixed_spectra.end()) throw InputError("no fixed spectrum for index " + std::to_string(index));
    return it->second;
  }
};

inline EnsembleSpec validate_spec(const RawSpec& raw) {
  if (raw.N < 1) throw InputError("invalid spec: N must be >= 1");
  if (raw.d < raw.N) throw InputError("invalid spec: d must be >= N");
  EnsembleSpec spec;
  spec.N = raw.N;
  spec.d = raw.d;
  spec.weights = WeightVector::make(raw.weights);
  const int r = spec.weights.rank();
  if (static_cast<int>(raw.fixed.size()) > r) throw InputError("invalid spec: |K| exceeds r");
  for (const auto& [index, spectrum] : raw.fixed) {
    if (index < 1 || index > r) {
      throw InputError("invalid spec: fixed index " + std::to_string(index) + " outside [1, r=" +
                       std::to_string(r) + "]");
    }
    if (static_cast<int>(spectrum.size()) != raw.d) {
      throw InputError("invalid spec: fixed spectrum " + std::to_string(index) + " has length " +
                       std::to_string(spectrum.size()) + ", expected d = " + std::to_string(raw.d));
    }
    auto sorted = sort_desc(spectrum).values;
    spec.fixed_spectra.emplace(index, OccupationVector::make(std::move(sorted), raw.N));
    spec.fixed_indices.push_back(index);
  }
  return spec;
}

}  // namespace wrep

// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <concepts>
#include <string>

namespace wrep {

/// Arbitrary precision rational used for exact constraint generation.
using Rational = boost::multiprecision::cpp_rational;

/// Global tolerance for equality and membership checks in floating point.
inline constexpr double kTolerance = 1e-10;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double tolerance() { return kTolerance; }
  /// Pivot threshold for the simplex solver.
  static double pivot_epsilon() { return 1e-12; }
  static double to_double(double x) { return x; }
  static std::string to_string(double x) { return std::to_string(x); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational tolerance() { return Rational(0); }
  static Rational pivot_epsilon() { return Rational(0); }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static std::string to_string(const Rational& x) { return x.str(); }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

template <Scalar T>
double to_double(const T& x) {
  return ScalarTraits<T>::to_double(x);
}

template <Scalar T>
T tolerance_of() {
  return ScalarTraits<T>::tolerance();
}

template <Scalar T>
T abs_of(const T& x) {
  return x < T(0) ? T(-x) : x;
}

}  // namespace wrep

// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace wrep {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (violated type invariant, bad file).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Request outside the supported envelope (dimension guards, r >= 3 paths).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Indicates a bug, not bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace wrep

// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file parallel.hpp
 * @brief Minimal fan-out over sample indices with std::thread.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace wrep {

inline unsigned resolve_workers(unsigned requested, std::size_t tasks) {
  unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (tasks < w) w = static_cast<unsigned>(std::max<std::size_t>(tasks, 1));
  return w;
}

/// Calls body(i) for i in [0, n), strided across workers. The first
/// exception thrown by any worker is rethrown after all have joined.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
  workers = resolve_workers(workers, n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < workers; ++k) {
    pool.emplace_back([&, k] {
      try {
        for (std::size_t i = k; i < n; i += workers) body(i);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Per-worker accumulators merged in worker order. `merge` must be
/// commutative and associative for the result not to depend on `workers`.
template <class Acc, class Body, class Merge>
Acc parallel_reduce(std::size_t n, unsigned workers, const Acc& init, Body&& body, Merge&& merge) {
  workers = resolve_workers(workers, n);
  std::vector<Acc> local(workers, init);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](unsigned k) {
    try {
      for (std::size_t i = k; i < n; i += workers) body(i, local[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < workers; ++k) pool.emplace_back(run, k);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Acc out = init;
  for (auto& a : local) merge(out, a);
  return out;
}

}  // namespace wrep

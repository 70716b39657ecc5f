// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file lp.hpp
 * @brief Dense two-phase simplex over an ordered field.
 *
 * Solves   max c.x   s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x free.
 *
 * Free variables are split as x = p - q. Pivoting follows Bland's rule
 * (lowest eligible index enters, ties in the ratio test go to the lowest
 * basic index), so runs are deterministic and cannot cycle. Instantiated
 * with Rational the solver is exact; with double it uses a small pivot
 * threshold from ScalarTraits.
 */

#pragma once

#include "wrep/errors.hpp"
#include "wrep/scalar.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace wrep {

enum class LpStatus { optimal, infeasible, unbounded };

template <Scalar T>
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  T value{};
  std::vector<T> x;
};

template <Scalar T>
struct LpProblem {
  std::size_t num_vars = 0;
  std::vector<T> objective;
  std::vector<std::vector<T>> a_ub;
  std::vector<T> b_ub;
  std::vector<std::vector<T>> a_eq;
  std::vector<T> b_eq;

  void add_le(std::vector<T> a, T b) {
    a_ub.push_back(std::move(a));
    b_ub.push_back(std::move(b));
  }
  void add_eq(std::vector<T> a, T b) {
    a_eq.push_back(std::move(a));
    b_eq.push_back(std::move(b));
  }
};

namespace detail {

template <Scalar T>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : a_(rows, std::vector<T>(cols + 1, T(0))), basis_(rows, 0), cols_(cols) {}

  T& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  T& rhs(std::size_t r) { return a_[r][cols_]; }
  std::size_t rows() const { return a_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c, std::vector<T>& z) {
    const T inv = T(1) / a_[r][c];
    for (auto& v : a_[r]) v *= inv;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == r) continue;
      const T f = a_[i][c];
      if (f == T(0)) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (a_[r][j] != T(0)) a_[i][j] -= f * a_[r][j];
      }
    }
    const T f = z[c];
    if (f != T(0)) {
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (a_[r][j] != T(0)) z[j] -= f * a_[r][j];
      }
    }
    basis_[r] = c;
  }

  // Reduced costs for maximizing cost.x given the current basis.
  std::vector<T> reduced_costs(const std::vector<T>& cost) {
    std::vector<T> z(cols_ + 1, T(0));
    for (std::size_t j = 0; j < cols_; ++j) z[j] = cost[j];
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const T cb = cost[basis_[i]];
      if (cb == T(0)) continue;
      for (std::size_t j = 0; j <= cols_; ++j) z[j] -= cb * a_[i][j];
    }
    return z;
  }

  // Returns false when unbounded.
  bool run(std::vector<T>& z, const std::vector<bool>& allowed) {
    const T eps = ScalarTraits<T>::pivot_epsilon();
    const std::size_t max_iter = 50000;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed[j] && z[j] > eps) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      T best{};
      for (std::size_t i = 0; i < a_.size(); ++i) {
        const T& aij = a_[i][*enter];
        if (!(aij > eps)) continue;
        const T ratio = a_[i][cols_] / aij;
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter, z);
    }
    throw InvariantError("simplex: iteration limit reached");
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  std::vector<std::vector<T>> a_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

}  // namespace detail

template <Scalar T>
LpResult<T> solve_lp(const LpProblem<T>& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t m_ub = lp.a_ub.size();
  const std::size_t m_eq = lp.a_eq.size();
  const std::size_t m = m_ub + m_eq;
  if (lp.objective.size() != n) throw InputError("solve_lp: objective size mismatch");

  // Columns: p (n), q (n), slack (m_ub), artificial (one per row needing it).
  std::vector<bool> needs_art(m, false);
  std::vector<bool> flip(m, false);
  for (std::size_t i = 0; i < m_ub; ++i) {
    if (lp.a_ub[i].size() != n) throw InputError("solve_lp: row size mismatch");
    if (lp.b_ub[i] < T(0)) flip[i] = needs_art[i] = true;
  }
  for (std::size_t i = 0; i < m_eq; ++i) {
    if (lp.a_eq[i].size() != n) throw InputError("solve_lp: row size mismatch");
    needs_art[m_ub + i] = true;
    if (lp.b_eq[i] < T(0)) flip[m_ub + i] = true;
  }
  std::size_t num_art = 0;
  for (bool b : needs_art) num_art += b ? 1 : 0;
  const std::size_t slack0 = 2 * n;
  const std::size_t art0 = slack0 + m_ub;
  const std::size_t cols = art0 + num_art;

  detail::Tableau<T> tab(m, cols);
  std::size_t art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const bool is_ub = i < m_ub;
    const auto& row = is_ub ? lp.a_ub[i] : lp.a_eq[i - m_ub];
    const T& b = is_ub ? lp.b_ub[i] : lp.b_eq[i - m_ub];
    const T sign = flip[i] ? T(-1) : T(1);
    for (std::size_t j = 0; j < n; ++j) {
      tab.at(i, j) = sign * row[j];
      tab.at(i, n + j) = -(sign * row[j]);
    }
    if (is_ub) tab.at(i, slack0 + i) = sign;
    tab.rhs(i) = sign * b;
    if (needs_art[i]) {
      tab.at(i, art) = T(1);
      tab.basis()[i] = art++;
    } else {
      tab.basis()[i] = slack0 + i;
    }
  }

  std::vector<bool> allowed(cols, true);
  if (num_art > 0) {
    std::vector<T> phase1(cols, T(0));
    for (std::size_t j = art0; j < cols; ++j) phase1[j] = T(-1);
    auto z = tab.reduced_costs(phase1);
    if (!tab.run(z, allowed)) throw InvariantError("simplex: phase one unbounded");
    const T infeas = z[cols];  // equals the artificial sum at optimum
    T tol = ScalarTraits<T>::exact ? T(0) : T(1e-9);
    if (abs_of(infeas) > tol) return LpResult<T>{LpStatus::infeasible, T(0), {}};
    // Drive artificial variables out of the basis.
    for (std::size_t i = 0; i < tab.rows();) {
      if (tab.basis()[i] < art0) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < art0; ++j) {
        if (abs_of(tab.at(i, j)) > ScalarTraits<T>::pivot_epsilon()) {
          col = j;
          break;
        }
      }
      if (col) {
        tab.pivot(i, *col, z);
        ++i;
      } else {
        tab.drop_row(i);
      }
    }
    for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;
  }

  std::vector<T> cost(cols, T(0));
  for (std::size_t j = 0; j < n; ++j) {
    cost[j] = lp.objective[j];
    cost[n + j] = -lp.objective[j];
  }
  auto z = tab.reduced_costs(cost);
  if (!tab.run(z, allowed)) return LpResult<T>{LpStatus::unbounded, T(0), {}};

  LpResult<T> res;
  res.status = LpStatus::optimal;
  std::vector<T> full(cols, T(0));
  for (std::size_t i = 0; i < tab.rows(); ++i) full[tab.basis()[i]] = tab.rhs(i);
  res.x.resize(n);
  res.value = T(0);
  for (std::size_t j = 0; j < n; ++j) {
    res.x[j] = full[j] - full[n + j];
    res.value += lp.objective[j] * res.x[j];
  }
  return res;
}

}  // namespace wrep

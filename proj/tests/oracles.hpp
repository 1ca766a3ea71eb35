#pragma once

// Independent reference computations for the test suite. Everything here is
// deliberately written against the definitions, not against the library
// implementation paths it checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <functional>
#include <vector>

#include "ams/coupling.hpp"

namespace oracles {

using ams::LatticeFunction;
using ams::PointSet;
using ams::Region;
using ams::SpacetimeGrid;

// Breadth-first search over the one-step causal relation.
inline PointSet bfs_causal(const SpacetimeGrid& g, const PointSet& seed, bool future) {
  PointSet out = seed;
  std::deque<std::pair<int, int>> queue;
  for (int t = 0; t < g.nt; ++t)
    for (int x = 0; x < g.nx; ++x)
      if (seed.test(t, x)) queue.emplace_back(t, x);
  while (!queue.empty()) {
    auto [t, x] = queue.front();
    queue.pop_front();
    int tn = future ? t + 1 : t - 1;
    if (tn < 0 || tn >= g.nt) continue;
    for (int dx : {-1, 0, 1}) {
      int xn = g.wrap(x + dx);
      if (!out.test(tn, xn)) {
        out.set(tn, xn);
        queue.emplace_back(tn, xn);
      }
    }
  }
  return out;
}

// Domain of dependence by path enumeration: a point belongs to D^-(R) iff
// no future-inextendible causal path from it avoids R. (Memoized top-down.)
inline PointSet escape_domain(const SpacetimeGrid& g, const PointSet& region, bool past_dod) {
  // escape(t,x): exists an inextendible path to the far boundary avoiding R.
  PointSet result(g.nt, g.nx);
  std::vector<std::int8_t> escape(std::size_t(g.nt) * g.nx, 0);
  auto esc = [&](int t, int x) -> std::int8_t& { return escape[std::size_t(t) * g.nx + x]; };
  if (past_dod) {
    // paths run to the future: sweep from the top slice down
    for (int x = 0; x < g.nx; ++x) esc(g.nt - 1, x) = region.test(g.nt - 1, x) ? 0 : 1;
    for (int t = g.nt - 2; t >= 0; --t)
      for (int x = 0; x < g.nx; ++x) {
        if (region.test(t, x)) {
          esc(t, x) = 0;
          continue;
        }
        esc(t, x) = esc(t + 1, g.wrap(x - 1)) || esc(t + 1, x) || esc(t + 1, g.wrap(x + 1));
      }
  } else {
    for (int x = 0; x < g.nx; ++x) esc(0, x) = region.test(0, x) ? 0 : 1;
    for (int t = 1; t < g.nt; ++t)
      for (int x = 0; x < g.nx; ++x) {
        if (region.test(t, x)) {
          esc(t, x) = 0;
          continue;
        }
        esc(t, x) = esc(t - 1, g.wrap(x - 1)) || esc(t - 1, x) || esc(t - 1, g.wrap(x + 1));
      }
  }
  for (int t = 0; t < g.nt; ++t)
    for (int x = 0; x < g.nx; ++x)
      if (!esc(t, x)) result.set(t, x);
  return result;
}

// Dense LU solve of the full interior linear system of a (possibly coupled)
// operator, with zero rows clamped at the temporal boundary matching the
// advanced (zero late) or retarded (zero early) condition.
class DenseOperator {
 public:
  // apply: matrix-vector product of the operator on full grid vectors
  DenseOperator(std::size_t n, std::function<std::vector<double>(const std::vector<double>&)> apply)
      : n_(n), apply_(std::move(apply)) {}

  // Assemble the operator matrix column by column, write the boundary
  // conditions (u[var] = 0) into the operator's empty boundary rows, and
  // LU-solve.
  std::vector<double> solve(const std::vector<double>& rhs,
                            const std::vector<std::pair<std::size_t, std::size_t>>& clamps)
      const {
    std::size_t n = n_;
    std::vector<double> A(n * n, 0.0);
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      e.assign(n, 0.0);
      e[j] = 1.0;
      std::vector<double> col = apply_(e);
      for (std::size_t i = 0; i < n; ++i) A[i * n + j] = col[i];
    }
    std::vector<double> b = rhs;
    for (auto [row, var] : clamps) {
      for (std::size_t j = 0; j < n; ++j) A[row * n + j] = 0.0;
      A[row * n + var] = 1.0;
      b[row] = 0.0;
    }
    // LU with partial pivoting
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t best = col;
      for (std::size_t r = col + 1; r < n; ++r)
        if (std::abs(A[r * n + col]) > std::abs(A[best * n + col])) best = r;
      if (best != col) {
        for (std::size_t j = 0; j < n; ++j) std::swap(A[col * n + j], A[best * n + j]);
        std::swap(b[col], b[best]);
      }
      double p = A[col * n + col];
      for (std::size_t r = col + 1; r < n; ++r) {
        double f = A[r * n + col] / p;
        if (f == 0.0) continue;
        for (std::size_t j = col; j < n; ++j) A[r * n + j] -= f * A[col * n + j];
        b[r] -= f * b[col];
      }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t ri = n; ri-- > 0;) {
      double s = b[ri];
      for (std::size_t j = ri + 1; j < n; ++j) s -= A[ri * n + j] * x[j];
      x[ri] = s / A[ri * n + ri];
    }
    return x;
  }

 private:
  std::size_t n_;
  std::function<std::vector<double>(const std::vector<double>&)> apply_;
};

// Clamps for an advanced solve: vanishing of the two top slices, written
// into the operator's two empty boundary rows (t = 0 and t = nt-1).
inline std::vector<std::pair<std::size_t, std::size_t>> advanced_clamp(const SpacetimeGrid& g) {
  std::vector<std::pair<std::size_t, std::size_t>> clamps;
  for (int c = 0; c < g.components; ++c)
    for (int x = 0; x < g.nx; ++x) {
      clamps.emplace_back(g.idx(c, g.nt - 1, x), g.idx(c, g.nt - 1, x));
      clamps.emplace_back(g.idx(c, 0, x), g.idx(c, g.nt - 2, x));
    }
  return clamps;
}

// Gaussian moments by the closed-form sum over pair counts:
// m_n = sum_j C(n,2j) (2j-1)!! var^j mean^{n-2j}.
inline double gaussian_moment(double mean, double var, int n) {
  auto binom = [](int a, int b) {
    double r = 1.0;
    for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
    return r;
  };
  double acc = 0.0;
  for (int j = 0; 2 * j <= n; ++j) {
    double dfact = 1.0;
    for (int i = 2 * j - 1; i >= 1; i -= 2) dfact *= i;
    double mp = 1.0;
    for (int i = 0; i < n - 2 * j; ++i) mp *= mean;
    double vp = 1.0;
    for (int i = 0; i < j; ++i) vp *= var;
    acc += binom(n, 2 * j) * dfact * vp * mp;
  }
  return acc;
}

// Sum over permutations of E[phi(f_{p(1)})...phi(f_{p(n)})] for a Gaussian
// state with means mu_i and symmetric covariance C_ij: the antisymmetric
// part of the two-point function cancels between a permutation and its
// reverse, so the result is n! times the Isserlis sum with C.
inline double isserlis_with_mean(const std::vector<double>& mu,
                                 const std::vector<std::vector<double>>& C) {
  int n = int(mu.size());
  // recursive expansion over partitions into pairs and singletons
  std::function<double(std::vector<int>)> rec = [&](std::vector<int> idx) -> double {
    if (idx.empty()) return 1.0;
    int i = idx.back();
    idx.pop_back();
    double acc = mu[i] * rec(idx);
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      std::vector<int> rest = idx;
      int j = rest[pos];
      rest.erase(rest.begin() + pos);
      acc += C[i][j] * rec(rest);
    }
    return acc;
  };
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;
  return fact * rec(all);
}

}  // namespace oracles

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "ams/grid.hpp"

namespace ams {

namespace detail {
inline double abs_val(double v) { return std::abs(v); }
inline double abs_val(const std::complex<double>& v) { return std::abs(v); }
}  // namespace detail

// Multi-component function on the spacetime grid, indexed [component][t][x].
// The grid's `components` field is the component count of this function.
template <typename T = double>
class LatticeFunction {
 public:
  LatticeFunction() = default;
  explicit LatticeFunction(const SpacetimeGrid& grid)
      : grid_(grid), data_(grid.size(), T(0)) {}

  const SpacetimeGrid& grid() const { return grid_; }
  int components() const { return grid_.components; }

  T& at(int c, int t, int x) { return data_[grid_.idx(c, t, x)]; }
  const T& at(int c, int t, int x) const { return data_[grid_.idx(c, t, x)]; }
  // Periodic in x.
  const T& atw(int c, int t, int x) const { return data_[grid_.idx(c, t, grid_.wrap(x))]; }

  T* slice_ptr(int c, int t) { return data_.data() + grid_.idx(c, t, 0); }
  const T* slice_ptr(int c, int t) const { return data_.data() + grid_.idx(c, t, 0); }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

  LatticeFunction& operator+=(const LatticeFunction& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  LatticeFunction& operator-=(const LatticeFunction& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  LatticeFunction& scale(T a) {
    for (auto& v : data_) v *= a;
    return *this;
  }
  void add_scaled(T a, const LatticeFunction& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * o.data_[i];
  }

  double inf_norm() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, detail::abs_val(v));
    return m;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (v != T(0)) return false;
    return true;
  }

  // Inclusive time range of exactly-nonzero entries of one component;
  // {-1,-1} when the component vanishes identically.
  std::pair<int, int> time_support(int c) const {
    int lo = -1, hi = -1;
    for (int t = 0; t < grid_.nt; ++t)
      for (int x = 0; x < grid_.nx; ++x)
        if (at(c, t, x) != T(0)) {
          if (lo < 0) lo = t;
          hi = t;
          break;
        }
    return {lo, hi};
  }

  std::pair<int, int> time_support() const {
    int lo = -1, hi = -1;
    for (int c = 0; c < components(); ++c) {
      auto [l, h] = time_support(c);
      if (l < 0) continue;
      if (lo < 0 || l < lo) lo = l;
      if (h > hi) hi = h;
    }
    return {lo, hi};
  }

  // Exactly-nonzero points of one component (or the union over components).
  PointSet support_points(int c) const {
    PointSet ps(grid_.nt, grid_.nx);
    for (int t = 0; t < grid_.nt; ++t)
      for (int x = 0; x < grid_.nx; ++x)
        if (at(c, t, x) != T(0)) ps.set(t, x);
    return ps;
  }
  PointSet support_points() const {
    PointSet ps(grid_.nt, grid_.nx);
    for (int c = 0; c < components(); ++c) ps.unite(support_points(c));
    return ps;
  }

  // Extract one component as a 1-component function.
  LatticeFunction<T> component(int c) const {
    LatticeFunction<T> out(grid_.with_components(1));
    std::copy(slice_ptr(c, 0), slice_ptr(c, 0) + std::size_t(grid_.nt) * grid_.nx,
              out.slice_ptr(0, 0));
    return out;
  }
  void set_component(int c, const LatticeFunction<T>& src) {
    std::copy(src.slice_ptr(0, 0), src.slice_ptr(0, 0) + std::size_t(grid_.nt) * grid_.nx,
              slice_ptr(c, 0));
  }

 private:
  SpacetimeGrid grid_;
  std::vector<T> data_;
};

template <typename T>
LatticeFunction<T> operator-(LatticeFunction<T> a, const LatticeFunction<T>& b) {
  a -= b;
  return a;
}
template <typename T>
LatticeFunction<T> operator+(LatticeFunction<T> a, const LatticeFunction<T>& b) {
  a += b;
  return a;
}

template <typename T>
double max_abs_diff(const LatticeFunction<T>& a, const LatticeFunction<T>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, detail::abs_val(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace ams

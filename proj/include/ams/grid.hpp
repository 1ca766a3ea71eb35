#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ams/util.hpp"

namespace ams {

// Finite 1+1-dimensional lattice cylinder: nt time slices, nx spatial sites
// on a periodic circle. Discrete causal speed is one site per step; with
// dt/dx <= 1 the discrete cone contains the continuum cone.
struct SpacetimeGrid {
  int nt = 0;
  int nx = 0;
  double dt = 0.0;
  double dx = 0.0;
  int components = 1;

  std::size_t size() const { return std::size_t(components) * nt * nx; }
  std::size_t slice() const { return std::size_t(nx); }
  std::size_t idx(int c, int t, int x) const {
    return (std::size_t(c) * nt + t) * nx + x;
  }
  int wrap(int x) const {
    int r = x % nx;
    return r < 0 ? r + nx : r;
  }
  double volume_element() const { return dt * dx; }

  bool same_geometry(const SpacetimeGrid& o) const {
    return nt == o.nt && nx == o.nx && dt == o.dt && dx == o.dx;
  }

  SpacetimeGrid with_components(int k) const {
    SpacetimeGrid g = *this;
    g.components = k;
    return g;
  }

  void validate() const {
    require(nt >= 8 && nx >= 8, ErrorKind::invalid, "grid: nt and nx must be >= 8");
    require(dt > 0.0 && dx > 0.0, ErrorKind::invalid, "grid: dt, dx must be positive");
    require(dt / dx <= 1.0 + 1e-12, ErrorKind::invalid, "grid: CFL ratio dt/dx must be <= 1");
    require(components >= 1, ErrorKind::invalid, "grid: components must be >= 1");
  }
};

// Spatial arc on the periodic circle, [start, start+len) mod nx.
// len == nx means the full circle.
struct SpatialArc {
  int start = 0;
  int len = 0;

  bool contains(int x, int nx) const {
    if (len >= nx) return true;
    int d = x - start;
    d %= nx;
    if (d < 0) d += nx;
    return d < len;
  }
};

// Set of lattice points as a boolean mask over one t-x sheet.
class PointSet {
 public:
  PointSet() = default;
  PointSet(int nt, int nx) : nt_(nt), nx_(nx), mask_(std::size_t(nt) * nx, 0) {}

  int nt() const { return nt_; }
  int nx() const { return nx_; }
  bool test(int t, int x) const { return mask_[std::size_t(t) * nx_ + x] != 0; }
  void set(int t, int x, bool v = true) { mask_[std::size_t(t) * nx_ + x] = v ? 1 : 0; }
  bool empty() const {
    for (auto b : mask_)
      if (b) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto b : mask_) n += b;
    return n;
  }
  bool subset_of(const PointSet& o) const {
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i] && !o.mask_[i]) return false;
    return true;
  }
  bool operator==(const PointSet& o) const {
    return nt_ == o.nt_ && nx_ == o.nx_ && mask_ == o.mask_;
  }
  PointSet& unite(const PointSet& o) {
    for (std::size_t i = 0; i < mask_.size(); ++i) mask_[i] |= o.mask_[i];
    return *this;
  }
  PointSet& intersect(const PointSet& o) {
    for (std::size_t i = 0; i < mask_.size(); ++i) mask_[i] &= o.mask_[i];
    return *this;
  }
  bool intersects(const PointSet& o) const {
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i] && o.mask_[i]) return true;
    return false;
  }

 private:
  int nt_ = 0, nx_ = 0;
  std::vector<std::uint8_t> mask_;
};

// Spacetime region: either a full slab (all of the circle over a time
// interval) or a box (time interval times spatial arc).
struct Region {
  enum class Kind { slab, box };
  Kind kind = Kind::slab;
  int t_lo = 0;
  int t_hi = 0;  // inclusive
  SpatialArc arc;  // ignored for slabs

  static Region full_slab(int t_lo, int t_hi) {
    Region r;
    r.kind = Kind::slab;
    r.t_lo = t_lo;
    r.t_hi = t_hi;
    return r;
  }
  static Region box(int t_lo, int t_hi, SpatialArc a) {
    Region r;
    r.kind = Kind::box;
    r.t_lo = t_lo;
    r.t_hi = t_hi;
    r.arc = a;
    return r;
  }

  bool contains(const SpacetimeGrid& g, int t, int x) const {
    if (t < t_lo || t > t_hi) return false;
    return kind == Kind::slab ? true : arc.contains(x, g.nx);
  }

  PointSet mask(const SpacetimeGrid& g) const {
    PointSet ps(g.nt, g.nx);
    for (int t = t_lo; t <= t_hi; ++t)
      for (int x = 0; x < g.nx; ++x)
        if (contains(g, t, x)) ps.set(t, x);
    return ps;
  }

  void validate(const SpacetimeGrid& g) const {
    require(t_lo >= 0 && t_hi < g.nt && t_lo <= t_hi, ErrorKind::geometry,
            "region: time interval outside grid");
    if (kind == Kind::box)
      require(arc.len >= 1 && arc.len <= g.nx, ErrorKind::geometry,
              "region: arc length out of range");
  }
};

}  // namespace ams

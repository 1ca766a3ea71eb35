#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ams/causal.hpp"
#include "ams/lattice.hpp"

namespace ams {

// Diagonal Klein-Gordon operator with one mass per component:
// (Pu)_c = d_tt u_c - d_xx u_c + m_c^2 u_c  (central differences).
struct FieldOperatorSpec {
  SpacetimeGrid grid;
  std::vector<double> masses;
  std::string label;

  FieldOperatorSpec() = default;
  FieldOperatorSpec(const SpacetimeGrid& g, std::vector<double> m, std::string lbl = "")
      : grid(g), masses(std::move(m)), label(std::move(lbl)) {
    validate();
  }

  void validate() const {
    grid.validate();
    require(int(masses.size()) == grid.components, ErrorKind::invalid,
            "field operator: one mass per component required");
    for (double m : masses)
      require(m >= 0.0, ErrorKind::invalid, "field operator: masses must be >= 0");
  }
};

// Sources must keep two slices of margin at each temporal end so the Green
// recursions can start from exact zeros.
template <typename T>
void require_source_margin(const LatticeFunction<T>& f) {
  auto [lo, hi] = f.time_support();
  if (lo < 0) return;  // zero source is fine
  require(lo >= 2 && hi <= f.grid().nt - 3, ErrorKind::invalid,
          "source support must stay within [2, nt-3] (two-slice temporal margin)");
}

namespace detail {

// One leapfrog slice: out = 2*cur - prev + dt^2 (Lap cur - m^2 cur + src),
// on the [c][t][x] storage of LatticeFunction. src may be null.
// Element-wise writes only, safe to parallelize.
template <typename T>
void leapfrog_slice_strided(const SpacetimeGrid& g, const std::vector<double>& masses,
                            const LatticeFunction<T>& u, int t_prev, int t_cur,
                            const LatticeFunction<T>* src, int t_src, LatticeFunction<T>& out,
                            int t_out) {
  const int nx = g.nx;
  const int nc = g.components;
  const double dt2 = g.dt * g.dt;
  const double inv_dx2 = 1.0 / (g.dx * g.dx);
#pragma omp parallel for schedule(static)
  for (int cx = 0; cx < nc * nx; ++cx) {
    const int c = cx / nx;
    const int x = cx % nx;
    const T* prev = u.slice_ptr(c, t_prev);
    const T* cur = u.slice_ptr(c, t_cur);
    T* dst = out.slice_ptr(c, t_out);
    const int xm = x == 0 ? nx - 1 : x - 1;
    const int xp = x == nx - 1 ? 0 : x + 1;
    T lap = (cur[xp] - T(2) * cur[x] + cur[xm]) * inv_dx2;
    T rhs = lap - masses[c] * masses[c] * cur[x];
    if (src) rhs += src->slice_ptr(c, t_src)[x];
    dst[x] = T(2) * cur[x] - prev[x] + dt2 * rhs;
  }
}

}  // namespace detail

// Apply P on interior times; boundary slices of the result are zero.
template <typename T>
LatticeFunction<T> apply_operator(const FieldOperatorSpec& spec, const LatticeFunction<T>& u) {
  const SpacetimeGrid& g = spec.grid;
  require(g.same_geometry(u.grid()) && g.components == u.components(), ErrorKind::invalid,
          "apply_operator: grid mismatch");
  LatticeFunction<T> out(g);
  const double inv_dt2 = 1.0 / (g.dt * g.dt);
  const double inv_dx2 = 1.0 / (g.dx * g.dx);
  for (int c = 0; c < g.components; ++c) {
    const double m2 = spec.masses[c] * spec.masses[c];
#pragma omp parallel for schedule(static)
    for (int t = 1; t < g.nt - 1; ++t) {
      const T* up = u.slice_ptr(c, t - 1);
      const T* uc = u.slice_ptr(c, t);
      const T* un = u.slice_ptr(c, t + 1);
      T* dst = out.slice_ptr(c, t);
      for (int x = 0; x < g.nx; ++x) {
        const int xm = x == 0 ? g.nx - 1 : x - 1;
        const int xp = x == g.nx - 1 ? 0 : x + 1;
        T dtt = (un[x] - T(2) * uc[x] + up[x]) * inv_dt2;
        T dxx = (uc[xp] - T(2) * uc[x] + uc[xm]) * inv_dx2;
        dst[x] = dtt - dxx + m2 * uc[x];
      }
    }
  }
  return out;
}

// Retarded Green operator E^+: unique u with Pu = f on the interior and
// u = 0 below the source; forward recursion.
template <typename T>
LatticeFunction<T> retarded_green(const FieldOperatorSpec& spec, const LatticeFunction<T>& f) {
  const SpacetimeGrid& g = spec.grid;
  require(g.same_geometry(f.grid()) && g.components == f.components(), ErrorKind::invalid,
          "retarded_green: grid mismatch");
  require_source_margin(f);
  LatticeFunction<T> u(g);
  for (int t = 1; t + 1 < g.nt; ++t)
    detail::leapfrog_slice_strided(g, spec.masses, u, t - 1, t, &f, t, u, t + 1);
  return u;
}

// Advanced Green operator E^-: u = 0 above the source; time-reversed
// recursion.
template <typename T>
LatticeFunction<T> advanced_green(const FieldOperatorSpec& spec, const LatticeFunction<T>& f) {
  const SpacetimeGrid& g = spec.grid;
  require(g.same_geometry(f.grid()) && g.components == f.components(), ErrorKind::invalid,
          "advanced_green: grid mismatch");
  require_source_margin(f);
  LatticeFunction<T> u(g);
  for (int t = g.nt - 2; t >= 1; --t)
    detail::leapfrog_slice_strided(g, spec.masses, u, t + 1, t, &f, t, u, t - 1);
  return u;
}

// Pauli-Jordan propagator E = E^- - E^+; a homogeneous solution.
template <typename T>
LatticeFunction<T> pauli_jordan(const FieldOperatorSpec& spec, const LatticeFunction<T>& f) {
  LatticeFunction<T> e = advanced_green(spec, f);
  e -= retarded_green(spec, f);
  return e;
}

// E_P(f,g) = sum dt dx f . (E_P g); antisymmetric.
template <typename T>
T symplectic_pairing(const FieldOperatorSpec& spec, const LatticeFunction<T>& f,
                     const LatticeFunction<T>& g) {
  require(spec.grid.same_geometry(f.grid()) && spec.grid.same_geometry(g.grid()),
          ErrorKind::invalid, "symplectic_pairing: grid mismatch");
  LatticeFunction<T> eg = pauli_jordan(spec, g);
  T acc(0);
  for (std::size_t i = 0; i < f.data().size(); ++i) acc += f.data()[i] * eg.data()[i];
  return acc * T(spec.grid.volume_element());
}

// [f] == [g] iff E_P f = E_P g (up to rounding).
template <typename T>
bool equivalence_check(const FieldOperatorSpec& spec, const LatticeFunction<T>& f,
                       const LatticeFunction<T>& g, double rel_tol = 1e-12) {
  LatticeFunction<T> ef = pauli_jordan(spec, f);
  LatticeFunction<T> eg = pauli_jordan(spec, g);
  double scale = std::max({ef.inf_norm(), eg.inf_norm(), 1.0});
  return max_abs_diff(ef, eg) <= rel_tol * scale;
}

}  // namespace ams

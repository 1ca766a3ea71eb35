#include "ams/swap.hpp"

#include <cmath>
#include <numbers>

namespace ams {

using cd = std::complex<double>;

GaugeProfile GaugeProfile::rotation(const SpacetimeGrid& g, int sigma_minus, int sigma_plus,
                                    double angle) {
  GaugeProfile p;
  p.grid = g;
  p.sigma_minus = sigma_minus;
  p.sigma_plus = sigma_plus;
  p.angle = angle;
  p.chi.assign(g.nt, 0.0);
  for (int t = 0; t < g.nt; ++t) {
    if (t <= sigma_minus)
      p.chi[t] = angle;
    else if (t >= sigma_plus)
      p.chi[t] = 0.0;
    else
      p.chi[t] = angle * 0.5 *
                 (1.0 + std::cos(std::numbers::pi * double(t - sigma_minus) /
                                 double(sigma_plus - sigma_minus)));
  }
  p.validate();
  return p;
}

void GaugeProfile::validate() const {
  grid.validate();
  require(int(chi.size()) == grid.nt, ErrorKind::invalid, "gauge profile: chi size mismatch");
  require(sigma_minus >= 2 && sigma_plus <= grid.nt - 3 && sigma_minus < sigma_plus,
          ErrorKind::geometry, "gauge profile: Cauchy slices out of range");
  for (int t = 1; t < grid.nt; ++t)
    require(chi[t] <= chi[t - 1] + 1e-15, ErrorKind::invalid,
            "gauge profile: chi must be monotone");
}

namespace {

enum class TimeSense { forward, backward };

// phases e^{i(chi[t+d]-chi[t])} used by the Q stencil
struct StepPhases {
  std::vector<cd> up, down;  // per slice
};

StepPhases phases(const GaugeProfile& p) {
  const int nt = p.grid.nt;
  StepPhases ph;
  ph.up.assign(nt, cd(1));
  ph.down.assign(nt, cd(1));
  for (int t = 1; t + 1 < nt; ++t) {
    ph.up[t] = std::polar(1.0, p.chi[t + 1] - p.chi[t]);
    ph.down[t] = std::polar(1.0, p.chi[t - 1] - p.chi[t]);
  }
  return ph;
}

ComplexField gauge_green_solve(const FieldOperatorSpec& P, const GaugeProfile& profile,
                               const ComplexField& F, TimeSense sense) {
  P.validate();
  profile.validate();
  const SpacetimeGrid& g = P.grid;
  require(g.components == 1 && g.same_geometry(F.grid()) && F.components() == 1,
          ErrorKind::invalid, "gauge green solve: scalar complex field expected");
  require_source_margin(F);
  require(g.same_geometry(profile.grid), ErrorKind::invalid,
          "gauge green solve: profile grid mismatch");

  StepPhases ph = phases(profile);
  const double m2 = P.masses[0] * P.masses[0];
  const double dt2 = g.dt * g.dt;
  const double inv_dx2 = 1.0 / (g.dx * g.dx);
  ComplexField u(g.with_components(1));

  auto rhs = [&](int t, int x) {
    int xm = g.wrap(x - 1), xp = g.wrap(x + 1);
    cd lap = (u.at(0, t, xp) - 2.0 * u.at(0, t, x) + u.at(0, t, xm)) * inv_dx2;
    return dt2 * (F.at(0, t, x) + lap - m2 * u.at(0, t, x)) + 2.0 * u.at(0, t, x);
  };

  if (sense == TimeSense::backward) {
    for (int t = g.nt - 2; t >= 1; --t) {
      cd inv_down = std::conj(ph.down[t]);
      for (int x = 0; x < g.nx; ++x)
        u.at(0, t - 1, x) = inv_down * (rhs(t, x) - ph.up[t] * u.at(0, t + 1, x));
    }
  } else {
    for (int t = 1; t + 1 < g.nt; ++t) {
      cd inv_up = std::conj(ph.up[t]);
      for (int x = 0; x < g.nx; ++x)
        u.at(0, t + 1, x) = inv_up * (rhs(t, x) - ph.down[t] * u.at(0, t - 1, x));
    }
  }
  return u;
}

}  // namespace

ComplexField conjugated_operator_apply(const FieldOperatorSpec& P, const GaugeProfile& profile,
                                       const ComplexField& psi) {
  P.validate();
  profile.validate();
  const SpacetimeGrid& g = P.grid;
  require(g.components == 1 && g.same_geometry(psi.grid()) && psi.components() == 1,
          ErrorKind::invalid, "conjugated_operator_apply: scalar complex field expected");
  StepPhases ph = phases(profile);
  const double m2 = P.masses[0] * P.masses[0];
  const double inv_dt2 = 1.0 / (g.dt * g.dt);
  const double inv_dx2 = 1.0 / (g.dx * g.dx);
  ComplexField out(g.with_components(1));
#pragma omp parallel for schedule(static)
  for (int t = 1; t < g.nt - 1; ++t) {
    for (int x = 0; x < g.nx; ++x) {
      int xm = g.wrap(x - 1), xp = g.wrap(x + 1);
      cd dtt = (ph.up[t] * psi.at(0, t + 1, x) - 2.0 * psi.at(0, t, x) +
                ph.down[t] * psi.at(0, t - 1, x)) *
               inv_dt2;
      cd dxx = (psi.at(0, t, xp) - 2.0 * psi.at(0, t, x) + psi.at(0, t, xm)) * inv_dx2;
      out.at(0, t, x) = dtt - dxx + m2 * psi.at(0, t, x);
    }
  }
  return out;
}

ComplexField gauge_advanced_green(const FieldOperatorSpec& P, const GaugeProfile& profile,
                                  const ComplexField& F) {
  return gauge_green_solve(P, profile, F, TimeSense::backward);
}

ComplexField gauge_retarded_green(const FieldOperatorSpec& P, const GaugeProfile& profile,
                                  const ComplexField& F) {
  return gauge_green_solve(P, profile, F, TimeSense::forward);
}

ComplexField gauge_pauli_jordan(const FieldOperatorSpec& P, const GaugeProfile& profile,
                                const ComplexField& F) {
  ComplexField e = gauge_advanced_green(P, profile, F);
  e -= gauge_retarded_green(P, profile, F);
  return e;
}

double swap_scatter_check(const FieldOperatorSpec& P, const GaugeProfile& profile,
                          const ComplexField& F) {
  auto [lo, hi] = F.time_support();
  require(lo > profile.sigma_plus, ErrorKind::geometry,
          "swap_scatter_check: F must be supported strictly above sigma_plus");
  ComplexField eq = gauge_pauli_jordan(P, profile, F);
  ComplexField ep = pauli_jordan(P, F);
  const cd expected_phase = std::polar(1.0, -profile.angle);
  const SpacetimeGrid& g = P.grid;
  double dev = 0.0;
  for (int t = 0; t <= profile.sigma_minus; ++t)
    for (int x = 0; x < g.nx; ++x)
      dev = std::max(dev, std::abs(eq.at(0, t, x) - expected_phase * ep.at(0, t, x)));
  return dev;
}

ComplexField complexify(const LatticeFunction<double>& f) {
  ComplexField out(f.grid().with_components(1));
  for (std::size_t i = 0; i < f.data().size(); ++i) out.data()[i] = f.data()[i];
  return out;
}

SwapInducedWeyl swap_induced_weyl(const FieldOperatorSpec& P, const GaugeProfile& profile,
                                  const LatticeFunction<double>& h,
                                  const GaussianState& system_state) {
  SwapInducedWeyl out;
  out.cross_check_dev = h.is_zero() ? 0.0 : swap_scatter_check(P, profile, complexify(h));
  out.value = system_state.weyl_expectation(h);
  return out;
}

}  // namespace ams

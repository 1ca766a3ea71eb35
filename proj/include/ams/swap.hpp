#pragma once

#include <complex>

#include "ams/gaussian.hpp"

namespace ams {

using ComplexField = LatticeFunction<std::complex<double>>;

// Temporal gauge ramp: chi = angle for t <= sigma_minus, 0 for t >=
// sigma_plus, monotone in between. The conjugated operator
// Q = e^{-i chi} P e^{i chi} is an explicit stencil with phase factors on
// the time neighbours, so its Green operators exist by the same recursion
// argument as for P.
struct GaugeProfile {
  SpacetimeGrid grid;
  std::vector<double> chi;  // per time slice
  int sigma_minus = 0;
  int sigma_plus = 0;
  double angle = 0.0;

  static GaugeProfile rotation(const SpacetimeGrid& g, int sigma_minus, int sigma_plus,
                               double angle);
  void validate() const;
};

// e^{-i chi} P (e^{i chi} psi) as one explicit stencil.
ComplexField conjugated_operator_apply(const FieldOperatorSpec& P, const GaugeProfile& profile,
                                       const ComplexField& psi);

ComplexField gauge_advanced_green(const FieldOperatorSpec& P, const GaugeProfile& profile,
                                  const ComplexField& F);
ComplexField gauge_retarded_green(const FieldOperatorSpec& P, const GaugeProfile& profile,
                                  const ComplexField& F);
ComplexField gauge_pauli_jordan(const FieldOperatorSpec& P, const GaugeProfile& profile,
                                const ComplexField& F);

// Max over t <= sigma_minus of |E_Q F - e^{-i angle} E_P F| for F supported
// above sigma_plus; zero up to rounding. angle = pi/2 is the system/probe
// swap, angle = pi the double rotation (global phase -1).
double swap_scatter_check(const FieldOperatorSpec& P, const GaugeProfile& profile,
                          const ComplexField& F);

ComplexField complexify(const LatticeFunction<double>& f);

struct SwapInducedWeyl {
  std::complex<double> value;  // omega(W_S(h)); probe-state independent
  double cross_check_dev;      // scattering identity deviation for h
};

// Induced Weyl expectation of the swap coupling: the probe generator W_P(h)
// induces W_S(h) exactly.
SwapInducedWeyl swap_induced_weyl(const FieldOperatorSpec& P, const GaugeProfile& profile,
                                  const LatticeFunction<double>& h,
                                  const GaussianState& system_state);

}  // namespace ams

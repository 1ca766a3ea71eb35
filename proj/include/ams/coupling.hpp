#pragma once

#include <utility>
#include <vector>

#include "ams/green.hpp"

namespace ams {

// Coupled operator T_lambda in block form: system row S u0 + sum_j
// lambda^{e_j} rho_j u_j, probe row j lambda^{e_j} rho_j u0 + P u_j.
// weight_exponents е_j are the powers of lambda on the couplings;
// smearing_exponents s_j record the per-component power of lambda carried by
// the unscaled probe smearing, (h_lambda)_j = lambda^{s_j - 1} h_j. The
// default s_j = 0 is the plain h/lambda scheme; the order-2k construction
// uses s = (0, 1, ..., 1).
struct CoupledOperatorSpec {
  FieldOperatorSpec system;  // 1 component
  FieldOperatorSpec probe;   // k components
  std::vector<LatticeFunction<double>> couplings;  // k, 1 component each
  std::vector<int> weight_exponents;
  std::vector<int> smearing_exponents;

  int probes() const { return probe.grid.components; }
  SpacetimeGrid coupled_grid() const { return system.grid.with_components(probes() + 1); }

  static CoupledOperatorSpec make(const FieldOperatorSpec& system,
                                  const FieldOperatorSpec& probe,
                                  std::vector<LatticeFunction<double>> couplings,
                                  std::vector<int> weight_exponents = {},
                                  std::vector<int> smearing_exponents = {});

  void validate() const;
};

struct ScatteringResult {
  LatticeFunction<double> f_lambda;  // 1 component, induced-observable representative
  LatticeFunction<double> g_lambda;  // k components
  double lambda = 0.0;
};

// Apply T_lambda on interior times (coupling evaluated at the stencil
// center).
LatticeFunction<double> coupled_apply(const CoupledOperatorSpec& spec, double lambda,
                                      const LatticeFunction<double>& u);

// Advanced/retarded Green operators of T_lambda; F has k+1 components.
LatticeFunction<double> coupled_advanced_green(const CoupledOperatorSpec& spec, double lambda,
                                               const LatticeFunction<double>& F);
LatticeFunction<double> coupled_retarded_green(const CoupledOperatorSpec& spec, double lambda,
                                               const LatticeFunction<double>& F);
LatticeFunction<double> coupled_pauli_jordan(const CoupledOperatorSpec& spec, double lambda,
                                             const LatticeFunction<double>& F);

// theta_lambda F = F - (T_lambda - S (+) P) E^-_{T_lambda} F for F supported
// in the out region (disjoint from the causal past of the couplings).
LatticeFunction<double> scattering_map(const CoupledOperatorSpec& spec, double lambda,
                                       const LatticeFunction<double>& F);

// (f_lambda; g_lambda) = theta_lambda (0; h_lambda) with h the UNSCALED
// smearing; the 1/lambda is cancelled analytically against the coupling
// weights wherever the exponents permit.
ScatteringResult induced_classical(const CoupledOperatorSpec& spec, double lambda,
                                   const LatticeFunction<double>& h);

// Least-squares slope of log ||f_lambda - target||_inf against log lambda.
FitResult residual_order_fit(const CoupledOperatorSpec& spec, const LatticeFunction<double>& h,
                             const LatticeFunction<double>& target,
                             const std::vector<double>& lambdas);

}  // namespace ams

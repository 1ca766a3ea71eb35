#pragma once

#include <optional>

#include "ams/born.hpp"

namespace ams {

// A complete measurement-scheme description: couplings with their lambda
// weights, probe smearing, equivalent target representative and regions.
struct SchemeSpec {
  CoupledOperatorSpec coupled;
  LatticeFunction<double> target_f;            // 1 component
  LatticeFunction<double> f_tilde;             // 1 component, two-slice representative
  LatticeFunction<double> probe_solution_phi;  // k components
  LatticeFunction<double> h;                   // k components, unscaled smearing
  Region N, N_tilde, L;
  int order_k = 1;
  double phi_min = 0.0;
  int cutoff_t0 = 0;
  int band_lo = 0, band_hi = 0;

  const SpacetimeGrid& grid() const { return coupled.system.grid; }
  void validate() const;
};

struct ProbeSolution {
  LatticeFunction<double> phi;  // 1 component, defined on the whole grid
  Region n_tilde_box;           // bounding box of the nonvanishing zone
  PointSet n_tilde;             // D(B) cap window box
  double phi_min = 0.0;
  int t0 = 0;
  int window = 0;
};

// psi = E_S f cut sharply at t0; f_tilde = S psi^- lives on slices
// {t0, t0+1} and generates the same solution as f, exactly.
LatticeFunction<double> make_equivalent_representative(const FieldOperatorSpec& S,
                                                       const LatticeFunction<double>& f, int t0);

// Plateau Cauchy data on the arc B at slice t0 (cosine ramp down over
// `ramp` sites outside B, zero discrete velocity), evolved with the
// homogeneous recursion. phi_min is the minimum of |phi| over
// D(B) cap ([t0-window, t0+window] x B) and must stay above phi_floor.
ProbeSolution make_probe_solution(const FieldOperatorSpec& P, SpatialArc B, int t0, int window,
                                  double phi_floor = 0.1, int ramp = 4);

// rho = -f_tilde / phi on supp f_tilde, zero elsewhere.
LatticeFunction<double> make_coupling(const LatticeFunction<double>& f_tilde,
                                      const LatticeFunction<double>& phi, double phi_guard);

// h = -P(chi phi) for a temporal ramp chi rising 0 -> 1 over
// [band_lo, band_hi]; then E_P h = phi and E^-_P h = phi below the band.
LatticeFunction<double> make_probe_smearing(const FieldOperatorSpec& P,
                                            const LatticeFunction<double>& phi, const Region& L,
                                            int band_lo, int band_hi);

struct SynthesisOptions {
  int cutoff_t0 = -1;  // default: N.t_hi - 2
  int window = 2;
  int ramp = 4;
  int band_lo = -1, band_hi = -1;  // default: derived from L
  double phi_target = 0.5;         // requested floor; hard floor is 0.1
};

// Chain the constructions above; for order_k > 1 install the higher
// couplings rho_{j+1} = eps_j(0)/phi from exact Born coefficients, with
// lambda weights (1, 2, 4, ..., 2k-2) and probe smearings
// (h/lambda, h, ..., h).
SchemeSpec synthesize_scheme(const FieldOperatorSpec& S, const FieldOperatorSpec& P,
                             const LatticeFunction<double>& f, const Region& N, const Region& L,
                             int order_k, const SynthesisOptions& opts = {});

// Stack single-probe schemes sharing S, N, L into one k-probe scheme.
SchemeSpec combine_schemes(const std::vector<SchemeSpec>& schemes);

// theta_lambda applied to the scheme's own smearing.
ScatteringResult induced_classical(const SchemeSpec& scheme, double lambda);

// Exact Born expansion of the scheme's induced observable.
BornExpansion born_expand_induced(const SchemeSpec& scheme, int max_order);

}  // namespace ams

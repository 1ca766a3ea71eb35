#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "ams/synthesis.hpp"

namespace ams {

// Quasi-free (Gaussian) state of the lattice field, optionally displaced by
// a classical solution. The one-particle structure is the invariant complex
// structure of the leapfrog one-step map, built per spatial Fourier mode:
// cos(Omega_k dt) = 1 - (dt^2/2) omega_k^2, J_k = (cos Omega_k dt I - M_k) /
// sin Omega_k dt with the orientation that makes the quadratic form
// positive. beta is then exactly invariant under change of reference slice
// and exactly positive under the discrete dynamics.
class GaussianState {
 public:
  static GaussianState vacuum(const FieldOperatorSpec& op, int reference_slice,
                              std::string label = "vacuum");

  // Displace by the classical solution u = E w; preserves the covariance.
  GaussianState with_coherent_shift(const LatticeFunction<double>& w) const;

  const FieldOperatorSpec& op() const { return op_; }
  int reference_slice() const { return t_ref_; }
  bool shifted() const { return shift_.has_value(); }
  const std::string& label() const { return label_; }

  // Symmetric positive bilinear form of the state; depends on smearings only
  // through their equivalence classes.
  double beta(const LatticeFunction<double>& f, const LatticeFunction<double>& g) const;

  // E(f,g) evaluated through the conserved slice form of the solutions.
  double commutator_form(const LatticeFunction<double>& f,
                         const LatticeFunction<double>& g) const;

  // <u, f> against the coherent displacement (0 for unshifted states).
  double one_point(const LatticeFunction<double>& f) const;

  // omega(W(f)) = exp(i <u,f> - beta(f,f)/4); never zero.
  std::complex<double> weyl_expectation(const LatticeFunction<double>& f) const;

  // n-th moment of the smeared field: Gaussian with mean <u,f> and variance
  // beta(f,f)/2.
  double field_moment(const LatticeFunction<double>& f, int n) const;

 private:
  GaussianState() = default;

  FieldOperatorSpec op_;
  int t_ref_ = 0;
  // cos/sin of the principal one-step angle, [component][mode].
  std::vector<double> cos_, sin_;
  std::vector<std::complex<double>> twiddle_;  // exp(-2 pi i j / nx)
  std::optional<LatticeFunction<double>> shift_;
  std::string label_;

  struct ModeData {  // Cauchy data of E f at the reference slice, per mode
    std::vector<std::complex<double>> a0, a1;  // [component*nx + k]
  };
  ModeData cauchy_modes(const LatticeFunction<double>& f) const;
};

double effort_smeared(const GaussianState& state, const LatticeFunction<double>& h);

// Effort of W(g)/sigma(W(g)); diverges as the normalizer shrinks.
double effort_rescaled_weyl(const GaussianState& state, const LatticeFunction<double>& g);

struct InducedWeylExpectation {
  std::complex<double> rescaled;      // expectation of W_P(h_l)/sigma(W_P(g_l))
  std::complex<double> unrescaled;    // sigma(W_P(g_l)) omega(W_S(f_l))
  std::complex<double> probe_factor;  // sigma(W_P(g_l))
  ScatteringResult scattering;
};

InducedWeylExpectation induced_weyl_expectation(const SchemeSpec& scheme, double lambda,
                                                const GaussianState& system_state,
                                                const GaussianState& probe_state);

// Expectation of the n-th induced field power, extracted from the formal
// power series in x of (omega x sigma)(Theta(1 (x) e^{ix phi_P(h_l)}))
// divided by sigma(e^{ix phi_P(g_l)}); equals the n-th Gaussian moment of
// the scattered system smearing.
double induced_power_expectation(const SchemeSpec& scheme, double lambda, int n,
                                 const GaussianState& system_state,
                                 const GaussianState& probe_state);

// 2^n-term polarization expansion: sum of sign * (combination)^n equals
// 2^n sum_{permutations} phi(f_1)...phi(f_n) after symmetrization.
std::vector<std::pair<int, LatticeFunction<double>>> polarization_expand(
    const std::vector<LatticeFunction<double>>& fs);

// Evaluation hook: expectation of the symmetrized product via the
// polarization expansion and Gaussian moments.
double symmetrized_product_expectation(const GaussianState& state,
                                       const std::vector<LatticeFunction<double>>& fs);

// Truncated power-series helpers used by induced_power_expectation; exposed
// for the reconstruction property test.
std::vector<std::complex<double>> gaussian_char_series(double mean, double beta_ff, int order);
std::vector<std::complex<double>> series_divide(const std::vector<std::complex<double>>& a,
                                                const std::vector<std::complex<double>>& b);
std::vector<std::complex<double>> series_multiply(const std::vector<std::complex<double>>& a,
                                                  const std::vector<std::complex<double>>& b);

}  // namespace ams

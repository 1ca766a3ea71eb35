#include "ams/gaussian.hpp"

#include <cmath>
#include <numbers>

namespace ams {

using cd = std::complex<double>;

GaussianState GaussianState::vacuum(const FieldOperatorSpec& op, int reference_slice,
                                    std::string label) {
  op.validate();
  const SpacetimeGrid& g = op.grid;
  require(reference_slice >= 1 && reference_slice + 1 <= g.nt - 2, ErrorKind::invalid,
          "vacuum: reference slice must be interior");
  GaussianState st;
  st.op_ = op;
  st.t_ref_ = reference_slice;
  st.label_ = std::move(label);
  st.cos_.resize(std::size_t(g.components) * g.nx);
  st.sin_.resize(std::size_t(g.components) * g.nx);
  for (int c = 0; c < g.components; ++c) {
    double m2 = op.masses[c] * op.masses[c];
    for (int k = 0; k < g.nx; ++k) {
      double sk = std::sin(std::numbers::pi * k / g.nx);
      double omega2 = m2 + 4.0 / (g.dx * g.dx) * sk * sk;
      double ck = 1.0 - 0.5 * g.dt * g.dt * omega2;
      // Elliptic one-step map needed on every mode: 0 < Omega dt < pi.
      require(ck < 1.0, ErrorKind::invalid,
              "vacuum: parabolic mode (zero frequency); a massless field on the periodic "
              "lattice has no invariant vacuum");
      require(ck > -1.0, ErrorKind::invalid,
              "vacuum: hyperbolic mode, dt * omega_max must stay below 2");
      st.cos_[std::size_t(c) * g.nx + k] = ck;
      st.sin_[std::size_t(c) * g.nx + k] = std::sqrt(1.0 - ck * ck);
    }
  }
  st.twiddle_.resize(g.nx);
  for (int j = 0; j < g.nx; ++j) {
    double ang = -2.0 * std::numbers::pi * j / g.nx;
    st.twiddle_[j] = cd(std::cos(ang), std::sin(ang));
  }
  return st;
}

GaussianState GaussianState::with_coherent_shift(const LatticeFunction<double>& w) const {
  GaussianState st = *this;
  st.shift_ = pauli_jordan(op_, w);
  st.label_ = label_ + "+shift";
  return st;
}

GaussianState::ModeData GaussianState::cauchy_modes(const LatticeFunction<double>& f) const {
  const SpacetimeGrid& g = op_.grid;
  require(g.same_geometry(f.grid()) && f.components() == g.components, ErrorKind::invalid,
          "gaussian: grid mismatch");
  LatticeFunction<double> sol = pauli_jordan(op_, f);
  ModeData md;
  md.a0.assign(std::size_t(g.components) * g.nx, cd(0));
  md.a1.assign(std::size_t(g.components) * g.nx, cd(0));
  for (int c = 0; c < g.components; ++c) {
    const double* r0 = sol.slice_ptr(c, t_ref_);
    const double* r1 = sol.slice_ptr(c, t_ref_ + 1);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < g.nx; ++k) {
      cd s0(0), s1(0);
      for (int x = 0; x < g.nx; ++x) {
        cd tw = twiddle_[std::size_t(k) * x % g.nx];
        s0 += r0[x] * tw;
        s1 += r1[x] * tw;
      }
      md.a0[std::size_t(c) * g.nx + k] = s0;
      md.a1[std::size_t(c) * g.nx + k] = s1;
    }
  }
  return md;
}

double GaussianState::beta(const LatticeFunction<double>& f,
                           const LatticeFunction<double>& g) const {
  const SpacetimeGrid& gr = op_.grid;
  ModeData mf = cauchy_modes(f);
  ModeData mg = cauchy_modes(g);
  const double w = gr.dx / (gr.dt * gr.nx);
  double acc = 0.0;
  for (std::size_t i = 0; i < mf.a0.size(); ++i) {
    cd a0 = mf.a0[i], a1 = mf.a1[i];
    cd b0 = mg.a0[i], b1 = mg.a1[i];
    double c = cos_[i], s = sin_[i];
    acc += (std::real(a0 * std::conj(b0)) + std::real(a1 * std::conj(b1)) -
            c * (std::real(a0 * std::conj(b1)) + std::real(a1 * std::conj(b0)))) /
           s;
  }
  return w * acc;
}

double GaussianState::commutator_form(const LatticeFunction<double>& f,
                                      const LatticeFunction<double>& g) const {
  const SpacetimeGrid& gr = op_.grid;
  LatticeFunction<double> sf = pauli_jordan(op_, f);
  LatticeFunction<double> sg = pauli_jordan(op_, g);
  double acc = 0.0;
  for (int c = 0; c < gr.components; ++c) {
    const double* f0 = sf.slice_ptr(c, t_ref_);
    const double* f1 = sf.slice_ptr(c, t_ref_ + 1);
    const double* g0 = sg.slice_ptr(c, t_ref_);
    const double* g1 = sg.slice_ptr(c, t_ref_ + 1);
    for (int x = 0; x < gr.nx; ++x) acc += f0[x] * g1[x] - f1[x] * g0[x];
  }
  return acc * gr.dx / gr.dt;
}

double GaussianState::one_point(const LatticeFunction<double>& f) const {
  if (!shift_) return 0.0;
  const SpacetimeGrid& g = op_.grid;
  require(g.same_geometry(f.grid()) && f.components() == g.components, ErrorKind::invalid,
          "gaussian: grid mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.data().size(); ++i) acc += shift_->data()[i] * f.data()[i];
  return acc * g.volume_element();
}

std::complex<double> GaussianState::weyl_expectation(const LatticeFunction<double>& f) const {
  double mu = one_point(f);
  double b = beta(f, f);
  return std::exp(cd(-0.25 * b, mu));
}

double GaussianState::field_moment(const LatticeFunction<double>& f, int n) const {
  require(n >= 0, ErrorKind::invalid, "field_moment: n >= 0");
  double mu = one_point(f);
  double var = 0.5 * beta(f, f);
  // m_n = mu m_{n-1} + (n-1) var m_{n-2}
  double m_prev = 0.0, m_cur = 1.0;
  for (int j = 1; j <= n; ++j) {
    double m_next = mu * m_cur + (j - 1) * var * m_prev;
    m_prev = m_cur;
    m_cur = m_next;
  }
  return m_cur;
}

double effort_smeared(const GaussianState& state, const LatticeFunction<double>& h) {
  return std::sqrt(0.5 * state.beta(h, h));
}

double effort_rescaled_weyl(const GaussianState& state, const LatticeFunction<double>& g) {
  require(!state.shifted(), ErrorKind::invalid,
          "effort_rescaled_weyl: probe preparation states are unshifted");
  double b = state.beta(g, g);
  // |sigma(W(g))|^2 = e^{-b/2};  eff^2 = (1 - |c|^2)/|c|^2 = e^{b/2} - 1.
  require(std::exp(-0.25 * b) > 0.0, ErrorKind::invalid,
          "effort_rescaled_weyl: normalizer underflowed to zero");
  return std::sqrt(std::expm1(0.5 * b));
}

InducedWeylExpectation induced_weyl_expectation(const SchemeSpec& scheme, double lambda,
                                                const GaussianState& system_state,
                                                const GaussianState& probe_state) {
  require(lambda > 0.0, ErrorKind::invalid, "induced_weyl_expectation: lambda > 0");
  InducedWeylExpectation out;
  out.scattering = induced_classical(scheme, lambda);
  out.probe_factor = probe_state.weyl_expectation(out.scattering.g_lambda);
  out.rescaled = system_state.weyl_expectation(out.scattering.f_lambda);
  out.unrescaled = out.probe_factor * out.rescaled;
  return out;
}

std::vector<cd> gaussian_char_series(double mean, double beta_ff, int order) {
  // exp(i mu x - beta x^2 / 4) via the derivative recurrence
  // (m+1) a_{m+1} = i mu a_m - (beta/2) a_{m-1}.
  std::vector<cd> a(order + 1, cd(0));
  a[0] = cd(1);
  for (int m = 0; m < order; ++m) {
    cd v = cd(0, mean) * a[m];
    if (m >= 1) v -= 0.5 * beta_ff * a[m - 1];
    a[m + 1] = v / double(m + 1);
  }
  return a;
}

std::vector<cd> series_multiply(const std::vector<cd>& a, const std::vector<cd>& b) {
  std::vector<cd> c(a.size(), cd(0));
  for (std::size_t m = 0; m < a.size(); ++m)
    for (std::size_t j = 0; j <= m && j < b.size(); ++j) c[m] += a[m - j] * b[j];
  return c;
}

std::vector<cd> series_divide(const std::vector<cd>& a, const std::vector<cd>& b) {
  require(!b.empty() && b[0] != cd(0), ErrorKind::invalid,
          "series_divide: constant term must be invertible");
  std::vector<cd> c(a.size(), cd(0));
  for (std::size_t m = 0; m < a.size(); ++m) {
    cd v = a[m];
    for (std::size_t j = 1; j <= m && j < b.size(); ++j) v -= b[j] * c[m - j];
    c[m] = v / b[0];
  }
  return c;
}

double induced_power_expectation(const SchemeSpec& scheme, double lambda, int n,
                                 const GaussianState& system_state,
                                 const GaussianState& probe_state) {
  require(lambda > 0.0 && n >= 1, ErrorKind::invalid,
          "induced_power_expectation: lambda > 0 and n >= 1");
  require(!probe_state.shifted(), ErrorKind::invalid,
          "induced_power_expectation: probe state must be unshifted");
  ScatteringResult sc = induced_classical(scheme, lambda);
  double mu = system_state.one_point(sc.f_lambda);
  double beta_s = system_state.beta(sc.f_lambda, sc.f_lambda);
  double beta_p = probe_state.beta(sc.g_lambda, sc.g_lambda);
  // (omega x sigma)(Theta(1 (x) e^{ix phi_P(h_l)})) = exp(i mu x - (beta_S +
  // beta_P) x^2/4); divide out sigma(e^{ix phi_P(g_l)}) = exp(-beta_P x^2/4).
  std::vector<cd> coupled = gaussian_char_series(mu, beta_s + beta_p, n);
  std::vector<cd> probe = gaussian_char_series(0.0, beta_p, n);
  std::vector<cd> quotient = series_divide(coupled, probe);
  double factorial = 1.0;
  for (int j = 2; j <= n; ++j) factorial *= j;
  cd val = std::pow(cd(0, -1), n) * factorial * quotient[n];
  return val.real();
}

std::vector<std::pair<int, LatticeFunction<double>>> polarization_expand(
    const std::vector<LatticeFunction<double>>& fs) {
  int n = int(fs.size());
  require(n >= 1 && n <= 6, ErrorKind::invalid, "polarization_expand: 1 <= n <= 6");
  std::vector<std::pair<int, LatticeFunction<double>>> out;
  out.reserve(std::size_t(1) << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int sign = 1;
    LatticeFunction<double> combo(fs[0].grid());
    for (int i = 0; i < n; ++i) {
      bool flip = mask & (1u << i);
      if (flip) sign = -sign;
      combo.add_scaled(flip ? -1.0 : 1.0, fs[i]);
    }
    out.emplace_back(sign, std::move(combo));
  }
  return out;
}

double symmetrized_product_expectation(const GaussianState& state,
                                       const std::vector<LatticeFunction<double>>& fs) {
  int n = int(fs.size());
  auto terms = polarization_expand(fs);
  double acc = 0.0;
  for (const auto& [sign, combo] : terms) acc += sign * state.field_moment(combo, n);
  return acc / double(std::size_t(1) << n);
}

}  // namespace ams

#include "ams/coupling.hpp"

#include <cmath>

namespace ams {

CoupledOperatorSpec CoupledOperatorSpec::make(const FieldOperatorSpec& system,
                                              const FieldOperatorSpec& probe,
                                              std::vector<LatticeFunction<double>> couplings,
                                              std::vector<int> weight_exponents,
                                              std::vector<int> smearing_exponents) {
  CoupledOperatorSpec spec;
  spec.system = system;
  spec.probe = probe;
  spec.couplings = std::move(couplings);
  if (weight_exponents.empty()) weight_exponents.assign(spec.couplings.size(), 1);
  if (smearing_exponents.empty()) smearing_exponents.assign(spec.couplings.size(), 0);
  spec.weight_exponents = std::move(weight_exponents);
  spec.smearing_exponents = std::move(smearing_exponents);
  spec.validate();
  return spec;
}

void CoupledOperatorSpec::validate() const {
  system.validate();
  probe.validate();
  require(system.grid.components == 1, ErrorKind::invalid, "coupled: system must be scalar");
  require(system.grid.same_geometry(probe.grid), ErrorKind::invalid,
          "coupled: system and probe share one grid");
  int k = probes();
  require(int(couplings.size()) == k, ErrorKind::invalid, "coupled: one coupling per probe");
  require(int(weight_exponents.size()) == k && int(smearing_exponents.size()) == k,
          ErrorKind::invalid, "coupled: exponent lists must match probe count");
  for (int j = 0; j < k; ++j) {
    require(system.grid.same_geometry(couplings[j].grid()) && couplings[j].components() == 1,
            ErrorKind::invalid, "coupled: couplings are scalar functions on the shared grid");
    require(weight_exponents[j] >= 1, ErrorKind::invalid, "coupled: weight exponents >= 1");
    require(smearing_exponents[j] >= 0, ErrorKind::invalid, "coupled: smearing exponents >= 0");
  }
}

namespace {

// Union of the coupling supports (exact nonzeros).
PointSet coupling_support(const CoupledOperatorSpec& spec) {
  PointSet ps(spec.system.grid.nt, spec.system.grid.nx);
  for (const auto& rho : spec.couplings) ps.unite(rho.support_points(0));
  return ps;
}

std::vector<double> coupled_masses(const CoupledOperatorSpec& spec) {
  std::vector<double> m;
  m.reserve(spec.probes() + 1);
  m.push_back(spec.system.masses[0]);
  for (double mp : spec.probe.masses) m.push_back(mp);
  return m;
}

// lambda^{e_j} weights for the off-diagonal blocks.
std::vector<double> coupling_weights(const CoupledOperatorSpec& spec, double lambda) {
  std::vector<double> w(spec.probes());
  for (int j = 0; j < spec.probes(); ++j) w[j] = std::pow(lambda, spec.weight_exponents[j]);
  return w;
}

// Interaction term of T_lambda at one slice: adds
//   sys:    sum_j w_j rho_j u_{probe j}
//   probe j: w_j rho_j u_sys
// into `out` (k+1 component slices at time t_out), with sign `sign`.
void add_interaction_slice(const CoupledOperatorSpec& spec, const std::vector<double>& w,
                           const LatticeFunction<double>& u, int t_u,
                           LatticeFunction<double>& out, int t_out, double sign) {
  const int nx = spec.system.grid.nx;
  const int k = spec.probes();
  double* sys = out.slice_ptr(0, t_out);
  const double* usys = u.slice_ptr(0, t_u);
  for (int j = 0; j < k; ++j) {
    if (w[j] == 0.0) continue;
    const double* rho = spec.couplings[j].slice_ptr(0, t_u);
    const double* upj = u.slice_ptr(1 + j, t_u);
    double* pj = out.slice_ptr(1 + j, t_out);
#pragma omp parallel for schedule(static)
    for (int x = 0; x < nx; ++x) {
      sys[x] += sign * w[j] * rho[x] * upj[x];
      pj[x] += sign * w[j] * rho[x] * usys[x];
    }
  }
}

enum class TimeSense { forward, backward };

LatticeFunction<double> coupled_green_solve(const CoupledOperatorSpec& spec, double lambda,
                                            const LatticeFunction<double>& F, TimeSense sense) {
  spec.validate();
  SpacetimeGrid cg = spec.coupled_grid();
  require(cg.same_geometry(F.grid()) && F.components() == cg.components, ErrorKind::invalid,
          "coupled green solve: F must have k+1 components on the shared grid");
  require_source_margin(F);

  const std::vector<double> masses = coupled_masses(spec);
  const std::vector<double> w = coupling_weights(spec, lambda);

  LatticeFunction<double> u(cg);
  // Diagonal leapfrog step with the interaction folded into the source at
  // the current slice: T_lambda u = F  <=>  (diag step) with source
  // F - (off-diagonal coupling terms).
  LatticeFunction<double> src_slice(cg);  // reused buffer, only slice t is touched
  if (sense == TimeSense::backward) {
    for (int t = cg.nt - 2; t >= 1; --t) {
      for (int c = 0; c < cg.components; ++c) {
        const double* f = F.slice_ptr(c, t);
        double* s = src_slice.slice_ptr(c, t);
        for (int x = 0; x < cg.nx; ++x) s[x] = f[x];
      }
      add_interaction_slice(spec, w, u, t, src_slice, t, -1.0);
      detail::leapfrog_slice_strided(cg, masses, u, t + 1, t, &src_slice, t, u, t - 1);
    }
  } else {
    for (int t = 1; t + 1 < cg.nt; ++t) {
      for (int c = 0; c < cg.components; ++c) {
        const double* f = F.slice_ptr(c, t);
        double* s = src_slice.slice_ptr(c, t);
        for (int x = 0; x < cg.nx; ++x) s[x] = f[x];
      }
      add_interaction_slice(spec, w, u, t, src_slice, t, -1.0);
      detail::leapfrog_slice_strided(cg, masses, u, t - 1, t, &src_slice, t, u, t + 1);
    }
  }
  return u;
}

}  // namespace

LatticeFunction<double> coupled_apply(const CoupledOperatorSpec& spec, double lambda,
                                      const LatticeFunction<double>& u) {
  SpacetimeGrid cg = spec.coupled_grid();
  require(cg.same_geometry(u.grid()) && u.components() == cg.components, ErrorKind::invalid,
          "coupled_apply: grid mismatch");
  FieldOperatorSpec diag(cg, coupled_masses(spec), "T0");
  LatticeFunction<double> out = apply_operator(diag, u);
  const std::vector<double> w = coupling_weights(spec, lambda);
  for (int t = 1; t + 1 < cg.nt; ++t) add_interaction_slice(spec, w, u, t, out, t, +1.0);
  return out;
}

LatticeFunction<double> coupled_advanced_green(const CoupledOperatorSpec& spec, double lambda,
                                               const LatticeFunction<double>& F) {
  return coupled_green_solve(spec, lambda, F, TimeSense::backward);
}

LatticeFunction<double> coupled_retarded_green(const CoupledOperatorSpec& spec, double lambda,
                                               const LatticeFunction<double>& F) {
  return coupled_green_solve(spec, lambda, F, TimeSense::forward);
}

LatticeFunction<double> coupled_pauli_jordan(const CoupledOperatorSpec& spec, double lambda,
                                             const LatticeFunction<double>& F) {
  LatticeFunction<double> e = coupled_advanced_green(spec, lambda, F);
  e -= coupled_retarded_green(spec, lambda, F);
  return e;
}

LatticeFunction<double> scattering_map(const CoupledOperatorSpec& spec, double lambda,
                                       const LatticeFunction<double>& F) {
  PointSet past_of_couplings = causal_past(spec.system.grid, coupling_support(spec));
  require(!F.support_points().intersects(past_of_couplings), ErrorKind::geometry,
          "scattering_map: F must be supported in the out region M+");
  LatticeFunction<double> u = coupled_advanced_green(spec, lambda, F);
  LatticeFunction<double> out = F;
  const std::vector<double> w = coupling_weights(spec, lambda);
  const SpacetimeGrid& cg = u.grid();
  for (int t = 1; t + 1 < cg.nt; ++t) add_interaction_slice(spec, w, u, t, out, t, -1.0);
  return out;
}

ScatteringResult induced_classical(const CoupledOperatorSpec& spec, double lambda,
                                   const LatticeFunction<double>& h) {
  spec.validate();
  require(lambda > 0.0, ErrorKind::invalid, "induced_classical: lambda must be positive");
  const SpacetimeGrid& g = spec.system.grid;
  const int k = spec.probes();
  require(g.same_geometry(h.grid()) && h.components() == k, ErrorKind::invalid,
          "induced_classical: h must have one component per probe");
  PointSet past_of_couplings = causal_past(g, coupling_support(spec));
  require(!h.support_points().intersects(past_of_couplings), ErrorKind::geometry,
          "induced_classical: h must be supported in the out region M+");

  SpacetimeGrid cg = spec.coupled_grid();

  // Group probe components by their smearing exponent; one advanced solve
  // per group with the unscaled smearing avoids any 1/lambda inside a solve.
  std::vector<int> distinct;
  for (int j = 0; j < k; ++j) {
    bool seen = false;
    for (int s : distinct) seen = seen || s == spec.smearing_exponents[j];
    if (!seen) distinct.push_back(spec.smearing_exponents[j]);
  }

  ScatteringResult out;
  out.lambda = lambda;
  out.f_lambda = LatticeFunction<double>(g.with_components(1));
  out.g_lambda = LatticeFunction<double>(g.with_components(k));

  // g starts from the scaled smearing lambda^{s_j - 1} h_j.
  for (int j = 0; j < k; ++j) {
    double c = std::pow(lambda, spec.smearing_exponents[j] - 1);
    LatticeFunction<double> hj = h.component(j);
    hj.scale(c);
    out.g_lambda.set_component(j, hj);
  }

  for (int s : distinct) {
    LatticeFunction<double> F(cg);
    for (int j = 0; j < k; ++j)
      if (spec.smearing_exponents[j] == s) {
        const double* src = h.slice_ptr(j, 0);
        double* dst = F.slice_ptr(1 + j, 0);
        for (std::size_t i = 0; i < std::size_t(g.nt) * g.nx; ++i) dst[i] = src[i];
      }
    LatticeFunction<double> U = coupled_advanced_green(spec, lambda, F);
    // f -= lambda^{e_i + s - 1} rho_i U_{probe i};
    // g_i -= lambda^{e_i + s - 1} rho_i U_sys.
    for (int i = 0; i < k; ++i) {
      int p = spec.weight_exponents[i] + s - 1;
      require(p >= 0, ErrorKind::invalid,
              "induced_classical: exponent bookkeeping produced a negative power");
      double c = std::pow(lambda, p);
      for (int t = 0; t < g.nt; ++t) {
        const double* rho = spec.couplings[i].slice_ptr(0, t);
        const double* up = U.slice_ptr(1 + i, t);
        const double* us = U.slice_ptr(0, t);
        double* f = out.f_lambda.slice_ptr(0, t);
        double* gi = out.g_lambda.slice_ptr(i, t);
        for (int x = 0; x < g.nx; ++x) {
          f[x] -= c * rho[x] * up[x];
          gi[x] -= c * rho[x] * us[x];
        }
      }
    }
  }
  return out;
}

FitResult residual_order_fit(const CoupledOperatorSpec& spec, const LatticeFunction<double>& h,
                             const LatticeFunction<double>& target,
                             const std::vector<double>& lambdas) {
  require(lambdas.size() >= 3, ErrorKind::invalid, "residual_order_fit: need >= 3 lambdas");
  double lmin = lambdas[0], lmax = lambdas[0];
  for (double l : lambdas) {
    require(l > 0.0, ErrorKind::invalid, "residual_order_fit: lambdas must be positive");
    lmin = std::min(lmin, l);
    lmax = std::max(lmax, l);
  }
  require(lmax / lmin >= 10.0, ErrorKind::invalid,
          "residual_order_fit: lambdas must span at least one decade");
  double scale = std::max(target.inf_norm(), 1.0);
  std::vector<double> ls, residuals;
  for (double l : lambdas) {
    ScatteringResult r = induced_classical(spec, l, h);
    double res = max_abs_diff(r.f_lambda, target);
    // exact hits carry no order information; drop them
    if (res <= 1e-13 * scale) continue;
    ls.push_back(l);
    residuals.push_back(res);
  }
  require(ls.size() >= 3, ErrorKind::invalid,
          "residual_order_fit: residual underflow, raise the lambda range");
  return fit_loglog(ls, residuals);
}

}  // namespace ams

#include "ams/born.hpp"

#include <algorithm>

namespace ams {

namespace {

// rho_i X_{probe i} summed into the system component, rho_i X_sys into probe
// component i, restricted to the couplings with weight exponent e.
LatticeFunction<double> interaction_block(const CoupledOperatorSpec& spec,
                                          const LatticeFunction<double>& X, int e) {
  const SpacetimeGrid& g = spec.system.grid;
  LatticeFunction<double> out(X.grid());
  for (int i = 0; i < spec.probes(); ++i) {
    if (spec.weight_exponents[i] != e) continue;
    const auto& rho = spec.couplings[i];
    for (int t = 0; t < g.nt; ++t) {
      const double* r = rho.slice_ptr(0, t);
      const double* xs = X.slice_ptr(0, t);
      const double* xp = X.slice_ptr(1 + i, t);
      double* os = out.slice_ptr(0, t);
      double* op = out.slice_ptr(1 + i, t);
      for (int x = 0; x < g.nx; ++x) {
        os[x] += r[x] * xp[x];
        op[x] += r[x] * xs[x];
      }
    }
  }
  return out;
}

}  // namespace

BornExpansion born_expand_induced(const CoupledOperatorSpec& spec,
                                  const LatticeFunction<double>& h, int max_order) {
  spec.validate();
  const int k = spec.probes();
  const SpacetimeGrid& g = spec.system.grid;
  require(g.same_geometry(h.grid()) && h.components() == k, ErrorKind::invalid,
          "born_expand_induced: h must have one component per probe");
  require(max_order >= 0 && max_order <= 2 * k + 2, ErrorKind::invalid,
          "born_expand_induced: max_order out of range (practical bound 2k+2)");
  const std::size_t bytes_per_coeff = sizeof(double) * std::size_t(k + 1) * g.nt * g.nx;
  require(bytes_per_coeff * std::size_t(max_order + 3) < (std::size_t(1) << 31),
          ErrorKind::invalid, "born_expand_induced: memory guard exceeded");

  SpacetimeGrid cg = spec.coupled_grid();

  std::vector<int> distinct_e;
  for (int e : spec.weight_exponents)
    if (std::find(distinct_e.begin(), distinct_e.end(), e) == distinct_e.end())
      distinct_e.push_back(e);

  // F(lambda) = sum_j lambda^{s_j - 1} (0 ; h_j e_j).
  LambdaPoly F;
  for (int j = 0; j < k; ++j) {
    LatticeFunction<double> Fj(cg);
    const double* src = h.slice_ptr(j, 0);
    double* dst = Fj.slice_ptr(1 + j, 0);
    for (std::size_t i = 0; i < std::size_t(g.nt) * g.nx; ++i) dst[i] = src[i];
    F.add(spec.smearing_exponents[j] - 1, Fj);
  }

  // U = sum_n (-E0 V)^n E0 F, truncated: the read-off below adds at least
  // one power of lambda, so U terms above max_order - 1 cannot contribute.
  const int keep = max_order - 1;
  LambdaPoly term;
  for (const auto& [p, c] : F.coeff) term.add(p, coupled_advanced_green(spec, 0.0, c));
  LambdaPoly U = term;
  while (!term.coeff.empty()) {
    LambdaPoly next;
    for (const auto& [p, c] : term.coeff)
      for (int e : distinct_e) {
        if (p + e > keep) continue;
        LatticeFunction<double> v = interaction_block(spec, c, e);
        if (v.is_zero()) continue;
        next.add(p + e, coupled_advanced_green(spec, 0.0, v), -1.0);
      }
    next.drop_above(keep);
    for (const auto& [p, c] : next.coeff) U.add(p, c);
    term = std::move(next);
  }

  // Read off f = -sum_i lambda^{e_i} rho_i U_{probe i} and
  // g_i = lambda^{s_i-1} h_i - lambda^{e_i} rho_i U_sys.
  BornExpansion out;
  out.max_order = max_order;
  for (int j = 0; j < k; ++j) out.g.add(spec.smearing_exponents[j] - 1, [&] {
    LatticeFunction<double> gj(g.with_components(k));
    gj.set_component(j, h.component(j));
    return gj;
  }());
  for (const auto& [p, U_p] : U.coeff) {
    for (int i = 0; i < k; ++i) {
      int q = p + spec.weight_exponents[i];
      if (q > max_order) continue;
      LatticeFunction<double> fc(g.with_components(1));
      LatticeFunction<double> gc(g.with_components(k));
      const auto& rho = spec.couplings[i];
      for (int t = 0; t < g.nt; ++t) {
        const double* r = rho.slice_ptr(0, t);
        const double* up = U_p.slice_ptr(1 + i, t);
        const double* us = U_p.slice_ptr(0, t);
        double* f = fc.slice_ptr(0, t);
        double* gi = gc.slice_ptr(i, t);
        for (int x = 0; x < g.nx; ++x) {
          f[x] = -r[x] * up[x];
          gi[x] = -r[x] * us[x];
        }
      }
      out.f.add(q, fc);
      out.g.add(q, gc);
    }
  }
  require(out.f.coeff.empty() || out.f.min_exponent() >= 0, ErrorKind::invalid,
          "born_expand_induced: negative power survived in the induced observable");
  return out;
}

}  // namespace ams

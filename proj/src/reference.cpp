#include "ams/reference.hpp"

#include <cmath>

#include "ams/rng.hpp"

namespace ams::reference {

namespace {

// u[t_out] = 2 u[t_cur] - u[t_prev] + dt^2 (Lap u[t_cur] - m^2 u[t_cur] + src[t_cur])
void step(const SpacetimeGrid& g, const std::vector<double>& masses,
          const LatticeFunction<double>& u, int t_prev, int t_cur,
          const LatticeFunction<double>* src, LatticeFunction<double>& out, int t_out) {
  const double dt2 = g.dt * g.dt;
  const double inv_dx2 = 1.0 / (g.dx * g.dx);
  for (int c = 0; c < g.components; ++c) {
    const double* prev = u.slice_ptr(c, t_prev);
    const double* cur = u.slice_ptr(c, t_cur);
    double* dst = out.slice_ptr(c, t_out);
    for (int x = 0; x < g.nx; ++x) {
      const int xm = x == 0 ? g.nx - 1 : x - 1;
      const int xp = x == g.nx - 1 ? 0 : x + 1;
      double lap = (cur[xp] - 2.0 * cur[x] + cur[xm]) * inv_dx2;
      double rhs = lap - masses[c] * masses[c] * cur[x];
      if (src) rhs += src->slice_ptr(c, t_cur)[x];
      dst[x] = 2.0 * cur[x] - prev[x] + dt2 * rhs;
    }
  }
}

}  // namespace

LatticeFunction<double> retarded_green(const FieldOperatorSpec& spec,
                                       const LatticeFunction<double>& f) {
  const SpacetimeGrid& g = spec.grid;
  require_source_margin(f);
  LatticeFunction<double> u(g);
  for (int t = 1; t + 1 < g.nt; ++t) step(g, spec.masses, u, t - 1, t, &f, u, t + 1);
  return u;
}

LatticeFunction<double> advanced_green(const FieldOperatorSpec& spec,
                                       const LatticeFunction<double>& f) {
  const SpacetimeGrid& g = spec.grid;
  require_source_margin(f);
  LatticeFunction<double> u(g);
  for (int t = g.nt - 2; t >= 1; --t) step(g, spec.masses, u, t + 1, t, &f, u, t - 1);
  return u;
}

LatticeFunction<double> coupled_advanced_green(const CoupledOperatorSpec& spec, double lambda,
                                               const LatticeFunction<double>& F) {
  spec.validate();
  SpacetimeGrid cg = spec.coupled_grid();
  require_source_margin(F);
  std::vector<double> masses;
  masses.push_back(spec.system.masses[0]);
  for (double m : spec.probe.masses) masses.push_back(m);
  std::vector<double> w(spec.probes());
  for (int j = 0; j < spec.probes(); ++j) w[j] = std::pow(lambda, spec.weight_exponents[j]);

  LatticeFunction<double> u(cg);
  LatticeFunction<double> src(cg);
  for (int t = cg.nt - 2; t >= 1; --t) {
    for (int c = 0; c < cg.components; ++c)
      for (int x = 0; x < cg.nx; ++x) src.at(c, t, x) = F.at(c, t, x);
    for (int j = 0; j < spec.probes(); ++j) {
      for (int x = 0; x < cg.nx; ++x) {
        double r = spec.couplings[j].at(0, t, x);
        src.at(0, t, x) -= w[j] * r * u.at(1 + j, t, x);
        src.at(1 + j, t, x) -= w[j] * r * u.at(0, t, x);
      }
    }
    step(cg, masses, u, t + 1, t, &src, u, t - 1);
  }
  return u;
}

double batch_mean(const OutcomeLaw& law, long long n, std::uint64_t seed,
                  std::uint64_t stream) {
  // Same chunk boundaries as the parallel path, summed sequentially.
  const long long chunk = (long long)kSumChunk;
  double total = 0.0;
  for (long long lo = 0; lo < n; lo += chunk) {
    const long long hi = std::min(n, lo + chunk);
    double s = 0.0;
    for (long long i = lo; i < hi; ++i) s += rng::normal(seed, stream, std::uint64_t(i));
    total += s;
  }
  return law.mean + std::sqrt(law.variance) * total / double(n);
}

}  // namespace ams::reference

#include "ams/synthesis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace ams {

namespace {

// Smallest arc covering the true points of one row-mask, grown by `margin`
// sites on each side. Falls back to the full circle when no gap fits.
SpatialArc covering_arc(const std::vector<std::uint8_t>& occupied, int nx, int margin) {
  int count = 0;
  for (auto b : occupied) count += b;
  if (count == 0) return {0, 0};
  // longest run of empty sites (cyclic)
  int best_len = -1, best_start = 0;
  for (int s = 0; s < nx; ++s) {
    if (occupied[s]) continue;
    int len = 0;
    while (len < nx && !occupied[(s + len) % nx]) ++len;
    if (len > best_len) {
      best_len = len;
      best_start = s;
    }
  }
  if (best_len <= 2 * margin) return {0, nx};
  int start = (best_start + best_len) % nx;  // first occupied site after the gap
  int len = nx - best_len;
  start = ((start - margin) % nx + nx) % nx;
  len += 2 * margin;
  if (len >= nx) return {0, nx};
  return {start, len};
}

}  // namespace

LatticeFunction<double> make_equivalent_representative(const FieldOperatorSpec& S,
                                                       const LatticeFunction<double>& f,
                                                       int t0) {
  S.validate();
  require(S.grid.components == 1 && f.components() == 1, ErrorKind::invalid,
          "make_equivalent_representative: scalar field expected");
  const SpacetimeGrid& g = S.grid;
  require(t0 >= 2 && t0 + 1 <= g.nt - 3, ErrorKind::invalid,
          "make_equivalent_representative: cutoff slice violates the temporal margin");
  LatticeFunction<double> psi = pauli_jordan(S, f);
  // S psi^- with the sharp cutoff psi^- = psi 1_{t <= t0} collapses to two
  // slices: the stencil only straddles the cut at t0 and t0+1.
  LatticeFunction<double> f_tilde(g.with_components(1));
  const double inv_dt2 = 1.0 / (g.dt * g.dt);
  for (int x = 0; x < g.nx; ++x) {
    f_tilde.at(0, t0, x) = -psi.at(0, t0 + 1, x) * inv_dt2;
    f_tilde.at(0, t0 + 1, x) = psi.at(0, t0, x) * inv_dt2;
  }
  return f_tilde;
}

ProbeSolution make_probe_solution(const FieldOperatorSpec& P, SpatialArc B, int t0, int window,
                                  double phi_floor, int ramp) {
  P.validate();
  require(P.grid.components == 1, ErrorKind::invalid,
          "make_probe_solution: single probe dynamics expected");
  const SpacetimeGrid& g = P.grid;
  require(window >= 1 && t0 - window >= 0 && t0 + window < g.nt, ErrorKind::invalid,
          "make_probe_solution: window outside grid");
  require(B.len >= 1 && B.len <= g.nx, ErrorKind::invalid, "make_probe_solution: bad arc");

  const double m = P.masses[0];
  ProbeSolution out;
  out.t0 = t0;
  out.window = window;
  out.phi = LatticeFunction<double>(g.with_components(1));

  // Plateau 1 on B, cosine ramp to 0 over `ramp` sites beyond each end.
  std::vector<double> data(g.nx, 0.0);
  if (B.len >= g.nx) {
    std::fill(data.begin(), data.end(), 1.0);
  } else {
    for (int i = 0; i < B.len; ++i) data[g.wrap(B.start + i)] = 1.0;
    for (int r = 1; r <= ramp; ++r) {
      double v = 0.5 * (1.0 + std::cos(std::numbers::pi * r / (ramp + 1)));
      int left = g.wrap(B.start - r);
      int right = g.wrap(B.start + B.len - 1 + r);
      data[left] = std::max(data[left], v);
      data[right] = std::max(data[right], v);
    }
  }

  // Zero discrete velocity: phi[t0+1] from one symmetric half-step.
  const double dt2 = g.dt * g.dt;
  const double inv_dx2 = 1.0 / (g.dx * g.dx);
  for (int x = 0; x < g.nx; ++x) out.phi.at(0, t0, x) = data[x];
  for (int x = 0; x < g.nx; ++x) {
    int xm = g.wrap(x - 1), xp = g.wrap(x + 1);
    double lap = (data[xp] - 2.0 * data[x] + data[xm]) * inv_dx2;
    out.phi.at(0, t0 + 1, x) = data[x] + 0.5 * dt2 * (lap - m * m * data[x]);
  }
  // Homogeneous leapfrog evolution over the whole grid.
  for (int t = t0 + 1; t + 1 < g.nt; ++t)
    detail::leapfrog_slice_strided(g.with_components(1), P.masses, out.phi, t - 1, t,
                                   (const LatticeFunction<double>*)nullptr, 0, out.phi, t + 1);
  for (int t = t0; t >= 1; --t)
    detail::leapfrog_slice_strided(g.with_components(1), P.masses, out.phi, t + 1, t,
                                   (const LatticeFunction<double>*)nullptr, 0, out.phi, t - 1);

  // Nonvanishing zone and its minimum.
  Region box = B.len >= g.nx ? Region::full_slab(t0 - window, t0 + window)
                             : Region::box(t0 - window, t0 + window, B);
  Region b_slice = B.len >= g.nx ? Region::full_slab(t0, t0) : Region::box(t0, t0, B);
  PointSet dom = domain_of_dependence(g, b_slice, Direction::both);
  dom.intersect(box.mask(g));
  out.n_tilde = dom;
  out.n_tilde_box = box;
  double pmin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < g.nt; ++t)
    for (int x = 0; x < g.nx; ++x)
      if (dom.test(t, x)) pmin = std::min(pmin, std::abs(out.phi.at(0, t, x)));
  out.phi_min = pmin;
  require(out.phi_min >= phi_floor, ErrorKind::synthesis,
          "make_probe_solution: probe solution dips below the floor on the coupling zone; "
          "shrink the window");
  return out;
}

LatticeFunction<double> make_coupling(const LatticeFunction<double>& f_tilde,
                                      const LatticeFunction<double>& phi, double phi_guard) {
  require(f_tilde.grid().same_geometry(phi.grid()), ErrorKind::invalid,
          "make_coupling: grid mismatch");
  const SpacetimeGrid& g = f_tilde.grid();
  LatticeFunction<double> rho(g.with_components(1));
  for (int t = 0; t < g.nt; ++t)
    for (int x = 0; x < g.nx; ++x) {
      double ft = f_tilde.at(0, t, x);
      if (ft == 0.0) continue;
      double p = phi.at(0, t, x);
      require(std::abs(p) >= phi_guard, ErrorKind::synthesis,
              "make_coupling: probe solution below guard on the target support");
      rho.at(0, t, x) = -ft / p;
    }
  return rho;
}

LatticeFunction<double> make_probe_smearing(const FieldOperatorSpec& P,
                                            const LatticeFunction<double>& phi, const Region& L,
                                            int band_lo, int band_hi) {
  P.validate();
  const SpacetimeGrid& g = P.grid;
  L.validate(g);
  require(band_hi - band_lo >= 2, ErrorKind::invalid,
          "make_probe_smearing: ramp must be monotone across >= 3 slices");
  require(band_lo - 1 >= L.t_lo && band_hi + 1 <= L.t_hi, ErrorKind::invalid,
          "make_probe_smearing: band (plus stencil reach) must lie inside L's time range");
  require(band_lo - 1 >= 2 && band_hi + 1 <= g.nt - 3, ErrorKind::invalid,
          "make_probe_smearing: band violates the temporal margin");

  std::vector<double> chi(g.nt, 0.0);
  for (int t = 0; t < g.nt; ++t) {
    if (t <= band_lo)
      chi[t] = 0.0;
    else if (t >= band_hi)
      chi[t] = 1.0;
    else
      chi[t] = 0.5 * (1.0 - std::cos(std::numbers::pi * double(t - band_lo) /
                                     double(band_hi - band_lo)));
  }

  // h = -P(chi phi); the stencil can only be nonzero where chi varies,
  // i.e. on t in [band_lo, band_hi]. Everything else is exactly zero.
  LatticeFunction<double> h(g.with_components(1));
  const double inv_dt2 = 1.0 / (g.dt * g.dt);
  const double inv_dx2 = 1.0 / (g.dx * g.dx);
  const double m2 = P.masses[0] * P.masses[0];
  for (int t = band_lo; t <= band_hi; ++t) {
    for (int x = 0; x < g.nx; ++x) {
      int xm = g.wrap(x - 1), xp = g.wrap(x + 1);
      double dtt = (chi[t + 1] * phi.at(0, t + 1, x) - 2.0 * chi[t] * phi.at(0, t, x) +
                    chi[t - 1] * phi.at(0, t - 1, x)) *
                   inv_dt2;
      double dxx =
          chi[t] * (phi.at(0, t, xp) - 2.0 * phi.at(0, t, x) + phi.at(0, t, xm)) * inv_dx2;
      h.at(0, t, x) = -(dtt - dxx + m2 * chi[t] * phi.at(0, t, x));
    }
  }

  // The spatial spread of phi over the band must stay inside L's arc.
  PointSet supp = h.support_points(0);
  require(supp.subset_of(L.mask(g)), ErrorKind::geometry,
          "make_probe_smearing: spatial spread of phi exits L over the band");
  return h;
}

void SchemeSpec::validate() const {
  coupled.validate();
  const SpacetimeGrid& g = grid();
  require(order_k >= 1 && coupled.probes() >= 1, ErrorKind::invalid, "scheme: bad order");
  require(phi_min > 0.0, ErrorKind::synthesis, "scheme: phi_min must be positive");
  require(check_admissible_geometry(g, N, L, f_tilde.support_points(0)), ErrorKind::geometry,
          "scheme: geometry is not admissible");
  for (const auto& rho : coupled.couplings)
    require(rho.support_points(0).subset_of(N.mask(g)), ErrorKind::geometry,
            "scheme: coupling support escapes N");
  require(h.support_points().subset_of(L.mask(g)), ErrorKind::geometry,
          "scheme: probe smearing escapes L");
}

SchemeSpec synthesize_scheme(const FieldOperatorSpec& S, const FieldOperatorSpec& P,
                             const LatticeFunction<double>& f, const Region& N, const Region& L,
                             int order_k, const SynthesisOptions& opts) {
  S.validate();
  P.validate();
  require(order_k >= 1, ErrorKind::invalid, "synthesize_scheme: order_k >= 1");
  const SpacetimeGrid& g = S.grid;
  require(g.same_geometry(P.grid), ErrorKind::invalid, "synthesize_scheme: grids differ");
  N.validate(g);
  L.validate(g);
  require(f.support_points(0).subset_of(N.mask(g)), ErrorKind::geometry,
          "synthesize_scheme: target support must lie in N");
  require(check_admissible_geometry(g, N, L, f.support_points(0)), ErrorKind::geometry,
          "synthesize_scheme: inadmissible N/L geometry");

  const int t0 = opts.cutoff_t0 >= 0 ? opts.cutoff_t0 : N.t_hi - 2;
  require(t0 >= N.t_lo && t0 + 1 <= N.t_hi, ErrorKind::geometry,
          "synthesize_scheme: cutoff slice must keep f_tilde inside N");

  LatticeFunction<double> f_tilde = make_equivalent_representative(S, f, t0);
  require(f_tilde.support_points(0).subset_of(N.mask(g)), ErrorKind::geometry,
          "synthesize_scheme: representative escaped N (enlarge N's arc)");

  // Arc covering the Cauchy data of psi at the cut, with >= 2 sites margin.
  std::vector<std::uint8_t> occupied(g.nx, 0);
  for (int t = t0; t <= t0 + 1; ++t)
    for (int x = 0; x < g.nx; ++x)
      if (f_tilde.at(0, t, x) != 0.0) occupied[x] = 1;
  SpatialArc B = covering_arc(occupied, g.nx, 2);
  require(B.len > 0, ErrorKind::synthesis, "synthesize_scheme: target is identically zero?");

  ProbeSolution probe =
      make_probe_solution(P, B, t0, opts.window, std::max(0.1, opts.phi_target), opts.ramp);
  for (int t = t0; t <= t0 + 1; ++t)
    for (int x = 0; x < g.nx; ++x)
      require(f_tilde.at(0, t, x) == 0.0 || probe.n_tilde.test(t, x), ErrorKind::synthesis,
              "synthesize_scheme: f_tilde support escapes the nonvanishing zone");

  LatticeFunction<double> rho1 = make_coupling(f_tilde, probe.phi, probe.phi_min * 0.999999);

  int band_lo = opts.band_lo >= 0 ? opts.band_lo : L.t_lo + 2;
  int band_hi = opts.band_hi >= 0 ? opts.band_hi : std::min(band_lo + 4, L.t_hi - 2);
  require(band_lo > t0 + opts.window, ErrorKind::geometry,
          "synthesize_scheme: band must lie strictly above the coupling zone");
  LatticeFunction<double> h1 = make_probe_smearing(P, probe.phi, L, band_lo, band_hi);

  auto assemble = [&](int probes) {
    std::vector<int> e(probes), s(probes);
    for (int j = 0; j < probes; ++j) {
      e[j] = j == 0 ? 1 : 2 * j;  // (1, 2, 4, ..., 2k-2)
      s[j] = j == 0 ? 0 : 1;      // (h/lambda, h, ..., h)
    }
    return std::pair{e, s};
  };

  std::vector<LatticeFunction<double>> couplings = {rho1};
  for (int j = 1; j < order_k; ++j) {
    // j-probe scheme assembled so far; its lambda^{2j} residual coefficient
    // determines the next coupling.
    auto [e, s] = assemble(j);
    std::vector<double> masses(j, P.masses[0]);
    FieldOperatorSpec probe_j(g.with_components(j), masses, P.label);
    CoupledOperatorSpec cj = CoupledOperatorSpec::make(S, probe_j, couplings, e, s);
    LatticeFunction<double> hj(g.with_components(j));
    for (int c = 0; c < j; ++c) hj.set_component(c, h1);
    BornExpansion born = born_expand_induced(cj, hj, 2 * j);
    LatticeFunction<double> eps = born.f.coefficient(2 * j, g.with_components(1));
    // By construction the coefficient lives where the couplings do.
    require(eps.support_points(0).subset_of(f_tilde.support_points(0)), ErrorKind::invalid,
            "synthesize_scheme: Born coefficient escaped supp f_tilde (internal error)");
    LatticeFunction<double> rho_next(g.with_components(1));
    for (int t = 0; t < g.nt; ++t)
      for (int x = 0; x < g.nx; ++x) {
        double v = eps.at(0, t, x);
        if (v != 0.0) rho_next.at(0, t, x) = v / probe.phi.at(0, t, x);
      }
    couplings.push_back(std::move(rho_next));
  }

  SchemeSpec scheme;
  auto [e, s] = assemble(order_k);
  std::vector<double> masses(order_k, P.masses[0]);
  FieldOperatorSpec probe_spec(g.with_components(order_k), masses, P.label);
  scheme.coupled = CoupledOperatorSpec::make(S, probe_spec, couplings, e, s);
  scheme.target_f = f;
  scheme.f_tilde = f_tilde;
  scheme.probe_solution_phi = LatticeFunction<double>(g.with_components(order_k));
  scheme.h = LatticeFunction<double>(g.with_components(order_k));
  for (int j = 0; j < order_k; ++j) {
    scheme.probe_solution_phi.set_component(j, probe.phi);
    scheme.h.set_component(j, h1);
  }
  scheme.N = N;
  scheme.N_tilde = probe.n_tilde_box;
  scheme.L = L;
  scheme.order_k = order_k;
  scheme.phi_min = probe.phi_min;
  scheme.cutoff_t0 = t0;
  scheme.band_lo = band_lo;
  scheme.band_hi = band_hi;
  scheme.validate();
  // Defining identity of the leading coupling: rho_1 phi = -f_tilde.
  double dev = 0.0;
  for (int t = 0; t < g.nt; ++t)
    for (int x = 0; x < g.nx; ++x)
      dev = std::max(dev, std::abs(rho1.at(0, t, x) * probe.phi.at(0, t, x) +
                                   f_tilde.at(0, t, x)));
  require(dev <= 1e-12 * std::max(1.0, f_tilde.inf_norm()), ErrorKind::synthesis,
          "synthesize_scheme: rho phi != -f_tilde");
  return scheme;
}

SchemeSpec combine_schemes(const std::vector<SchemeSpec>& schemes) {
  require(!schemes.empty(), ErrorKind::invalid, "combine_schemes: empty input");
  if (schemes.size() == 1) return schemes.front();
  const SchemeSpec& first = schemes.front();
  const SpacetimeGrid& g = first.grid();
  int k = int(schemes.size());
  std::vector<LatticeFunction<double>> couplings;
  std::vector<double> masses;
  for (const auto& s : schemes) {
    require(s.coupled.probes() == 1, ErrorKind::invalid,
            "combine_schemes: inputs must be single-probe schemes");
    require(s.grid().same_geometry(g), ErrorKind::invalid, "combine_schemes: grids differ");
    require(s.coupled.system.masses == first.coupled.system.masses, ErrorKind::invalid,
            "combine_schemes: system dynamics differ");
    require(s.N.mask(g) == first.N.mask(g) && s.L.mask(g) == first.L.mask(g),
            ErrorKind::geometry, "combine_schemes: regions differ");
    couplings.push_back(s.coupled.couplings[0]);
    masses.push_back(s.coupled.probe.masses[0]);
  }

  SchemeSpec out;
  FieldOperatorSpec probe_spec(g.with_components(k), masses, first.coupled.probe.label);
  out.coupled = CoupledOperatorSpec::make(first.coupled.system, probe_spec, couplings);
  out.target_f = first.target_f;
  out.f_tilde = first.f_tilde;
  out.probe_solution_phi = LatticeFunction<double>(g.with_components(k));
  out.h = LatticeFunction<double>(g.with_components(k));
  for (int j = 0; j < k; ++j) {
    out.probe_solution_phi.set_component(j, schemes[j].probe_solution_phi.component(0));
    out.h.set_component(j, schemes[j].h.component(0));
    if (j > 0) {
      out.target_f += schemes[j].target_f;
      out.f_tilde += schemes[j].f_tilde;
    }
  }
  out.N = first.N;
  out.L = first.L;
  // Bounding box of the individual nonvanishing zones.
  int lo = first.N_tilde.t_lo, hi = first.N_tilde.t_hi;
  for (const auto& s : schemes) {
    lo = std::min(lo, s.N_tilde.t_lo);
    hi = std::max(hi, s.N_tilde.t_hi);
  }
  out.N_tilde = Region::full_slab(lo, hi);
  out.order_k = 1;
  out.phi_min = first.phi_min;
  for (const auto& s : schemes) out.phi_min = std::min(out.phi_min, s.phi_min);
  out.cutoff_t0 = first.cutoff_t0;
  out.band_lo = first.band_lo;
  out.band_hi = first.band_hi;
  out.validate();
  return out;
}

ScatteringResult induced_classical(const SchemeSpec& scheme, double lambda) {
  return induced_classical(scheme.coupled, lambda, scheme.h);
}

BornExpansion born_expand_induced(const SchemeSpec& scheme, int max_order) {
  return born_expand_induced(scheme.coupled, scheme.h, max_order);
}

}  // namespace ams

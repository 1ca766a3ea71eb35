#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ams/born.hpp"
#include "ams/experiment.hpp"
#include "ams/reference.hpp"
#include "ams/rng.hpp"
#include "oracles.hpp"

using namespace ams;

namespace {

SpacetimeGrid base_grid(int nt = 40, int nx = 24) {
  SpacetimeGrid g;
  g.nt = nt;
  g.nx = nx;
  g.dt = 0.5;
  g.dx = 1.0;
  g.components = 1;
  return g;
}

// one system field, k probes, bump couplings near t = 10 and smearings
// above t = 20
CoupledOperatorSpec fixture(int k, double rho_amp = 0.8, std::vector<int> e = {},
                            std::vector<int> s = {}) {
  SpacetimeGrid g = base_grid();
  FieldOperatorSpec system(g, {0.3}, "sys");
  FieldOperatorSpec probe(g.with_components(k), std::vector<double>(k, 0.45), "probe");
  std::vector<LatticeFunction<double>> couplings;
  for (int j = 0; j < k; ++j)
    couplings.push_back(
        make_box_bump(g, 10, 11, {4 + 3 * j, 10}, rho_amp * (1.0 + 0.3 * j)));
  return CoupledOperatorSpec::make(system, probe, couplings, e, s);
}

LatticeFunction<double> fixture_smearing(int k) {
  SpacetimeGrid g = base_grid();
  LatticeFunction<double> h(g.with_components(k));
  for (int j = 0; j < k; ++j)
    h.set_component(j, make_box_bump(g, 20, 24, {2 + j, 14}, 1.0 + 0.2 * j));
  return h;
}

double dot_volume(const LatticeFunction<double>& a, const LatticeFunction<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) acc += a.data()[i] * b.data()[i];
  return acc * a.grid().volume_element();
}

}  // namespace

TEST_CASE("lambda = 0 reduces to the block-diagonal advanced solve") {
  CoupledOperatorSpec spec = fixture(2);
  SpacetimeGrid cg = spec.coupled_grid();
  LatticeFunction<double> F(cg);
  F.set_component(0, make_box_bump(spec.system.grid, 14, 16, {6, 8}, 1.0));
  F.set_component(2, make_box_bump(spec.system.grid, 18, 20, {3, 6}, -0.5));
  LatticeFunction<double> coupled = coupled_advanced_green(spec, 0.0, F);
  FieldOperatorSpec diag(cg, {0.3, 0.45, 0.45});
  LatticeFunction<double> block = advanced_green(diag, F);
  CHECK(max_abs_diff(coupled, block) == 0.0);
}

TEST_CASE("vanishing couplings reduce to the block-diagonal solve at any lambda") {
  CoupledOperatorSpec spec = fixture(1, 0.0);
  spec.couplings[0].fill(0.0);
  SpacetimeGrid cg = spec.coupled_grid();
  LatticeFunction<double> F(cg);
  F.set_component(1, make_box_bump(spec.system.grid, 20, 24, {2, 14}, 1.0));
  LatticeFunction<double> coupled = coupled_advanced_green(spec, 0.7, F);
  FieldOperatorSpec diag(cg, {0.3, 0.45});
  CHECK(max_abs_diff(coupled, advanced_green(diag, F)) == 0.0);
}

TEST_CASE("small coupled system agrees with the dense linear-system oracle") {
  SpacetimeGrid g = base_grid(12, 8);
  FieldOperatorSpec system(g, {0.2}, "sys");
  FieldOperatorSpec probe(g.with_components(1), {0.6}, "probe");
  std::vector<LatticeFunction<double>> couplings = {make_box_bump(g, 4, 6, {1, 5}, 1.1)};
  CoupledOperatorSpec spec = CoupledOperatorSpec::make(system, probe, couplings);
  SpacetimeGrid cg = spec.coupled_grid();

  LatticeFunction<double> F(cg);
  for (int c = 0; c < 2; ++c)
    for (int t = 3; t <= 8; ++t)
      for (int x = 0; x < g.nx; ++x)
        F.at(c, t, x) = 2.0 * rng::uniform(17, std::uint64_t(c) * 100 + t, x) - 1.0;

  const double lambda = 0.8;
  LatticeFunction<double> u = coupled_advanced_green(spec, lambda, F);

  oracles::DenseOperator dense(cg.size(), [&](const std::vector<double>& v) {
    LatticeFunction<double> in(cg);
    in.data() = v;
    return coupled_apply(spec, lambda, in).data();
  });
  std::vector<double> sol = dense.solve(F.data(), oracles::advanced_clamp(cg));
  double dev = 0.0;
  for (std::size_t i = 0; i < sol.size(); ++i) dev = std::max(dev, std::abs(sol[i] - u.data()[i]));
  CHECK(dev <= 1e-10);
}

TEST_CASE("T_lambda is symmetric under the volume pairing") {
  CoupledOperatorSpec spec = fixture(2, 0.9, {1, 2}, {0, 1});
  SpacetimeGrid cg = spec.coupled_grid();
  LatticeFunction<double> U(cg), V(cg);
  for (int c = 0; c < cg.components; ++c)
    for (int t = 4; t <= cg.nt - 5; ++t)
      for (int x = 0; x < cg.nx; ++x) {
        U.at(c, t, x) = 2.0 * rng::uniform(5, std::uint64_t(c) * cg.nt + t, x) - 1.0;
        V.at(c, t, x) = 2.0 * rng::uniform(6, std::uint64_t(c) * cg.nt + t, x) - 1.0;
      }
  const double lambda = 0.6;
  double lhs = dot_volume(coupled_apply(spec, lambda, U), V);
  double rhs = dot_volume(U, coupled_apply(spec, lambda, V));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("scattering map is the identity at lambda = 0 and for spacelike smearings") {
  CoupledOperatorSpec spec = fixture(1);
  SpacetimeGrid cg = spec.coupled_grid();
  LatticeFunction<double> F(cg);
  F.set_component(1, fixture_smearing(1).component(0));
  CHECK(max_abs_diff(scattering_map(spec, 0.0, F), F) == 0.0);

  // support spacelike to the coupling region: rho sits at x in [4,14),
  // t in [10,11]; its causal past at t = 5 leaves exactly x in {20,21} free,
  // and the advanced solution of G never reaches the coupling slices
  LatticeFunction<double> G(cg);
  G.set_component(1, make_box_bump(spec.system.grid, 5, 5, {20, 2}, 1.0));
  CHECK(max_abs_diff(scattering_map(spec, 0.9, G), G) == 0.0);
}

TEST_CASE("scattered smearing generates the same coupled solution") {
  CoupledOperatorSpec spec = fixture(1);
  SpacetimeGrid cg = spec.coupled_grid();
  LatticeFunction<double> F(cg);
  F.set_component(1, fixture_smearing(1).component(0));
  const double lambda = 0.5;
  LatticeFunction<double> theta_F = scattering_map(spec, lambda, F);
  LatticeFunction<double> lhs = coupled_pauli_jordan(spec, lambda, theta_F);
  LatticeFunction<double> rhs = coupled_pauli_jordan(spec, lambda, F);
  CHECK(max_abs_diff(lhs, rhs) <= 1e-10 * std::max(1.0, rhs.inf_norm()));
}

TEST_CASE("scattering map rejects smearings touching the causal past of the couplings") {
  CoupledOperatorSpec spec = fixture(1);
  SpacetimeGrid cg = spec.coupled_grid();
  LatticeFunction<double> F(cg);
  F.set_component(1, make_box_bump(spec.system.grid, 4, 6, {6, 4}, 1.0));  // below rho
  CHECK_THROWS_AS(scattering_map(spec, 0.5, F), Error);
}

TEST_CASE("induced observable with vanishing couplings is (0, h/lambda)") {
  CoupledOperatorSpec spec = fixture(1);
  spec.couplings[0].fill(0.0);
  LatticeFunction<double> h = fixture_smearing(1);
  ScatteringResult r = induced_classical(spec, 0.25, h);
  CHECK(r.f_lambda.is_zero());
  LatticeFunction<double> expected = h;
  expected.scale(1.0 / 0.25);
  CHECK(max_abs_diff(r.g_lambda, expected) == 0.0);
}

TEST_CASE("induced observable tends to -sum_j R_j E-_P h_j") {
  CoupledOperatorSpec spec = fixture(2);
  LatticeFunction<double> h = fixture_smearing(2);
  const SpacetimeGrid& g = spec.system.grid;

  LatticeFunction<double> limit(g.with_components(1));
  FieldOperatorSpec probe1(g, {spec.probe.masses[0]});
  for (int j = 0; j < 2; ++j) {
    LatticeFunction<double> ej = advanced_green(probe1, h.component(j));
    for (int t = 0; t < g.nt; ++t)
      for (int x = 0; x < g.nx; ++x)
        limit.at(0, t, x) -= spec.couplings[j].at(0, t, x) * ej.at(0, t, x);
  }

  ScatteringResult r = induced_classical(spec, 1e-3, h);
  CHECK(max_abs_diff(r.f_lambda, limit) <= 1e-5 * limit.inf_norm());
}

TEST_CASE("f_lambda is supported inside the union of coupling supports") {
  CoupledOperatorSpec spec = fixture(2);
  LatticeFunction<double> h = fixture_smearing(2);
  PointSet coupling_supp(spec.system.grid.nt, spec.system.grid.nx);
  for (const auto& rho : spec.couplings) coupling_supp.unite(rho.support_points(0));
  for (double lambda : {0.5, 0.1, 0.02})
    CHECK(induced_classical(spec, lambda, h)
              .f_lambda.support_points(0)
              .subset_of(coupling_supp));
}

TEST_CASE("probe correction g - h/lambda - lambda R E-_S R^T E-_P h is O(lambda^3)") {
  CoupledOperatorSpec spec = fixture(1);
  LatticeFunction<double> h = fixture_smearing(1);
  const SpacetimeGrid& g = spec.system.grid;
  FieldOperatorSpec probe1(g, {spec.probe.masses[0]});

  // w = R E-_S R^T E-_P h, the first probe correction
  LatticeFunction<double> eh = advanced_green(probe1, h.component(0));
  LatticeFunction<double> rteh(g);
  for (int t = 0; t < g.nt; ++t)
    for (int x = 0; x < g.nx; ++x)
      rteh.at(0, t, x) = spec.couplings[0].at(0, t, x) * eh.at(0, t, x);
  LatticeFunction<double> es = advanced_green(spec.system, rteh);
  LatticeFunction<double> w(g);
  for (int t = 0; t < g.nt; ++t)
    for (int x = 0; x < g.nx; ++x)
      w.at(0, t, x) = spec.couplings[0].at(0, t, x) * es.at(0, t, x);

  std::vector<double> lambdas = {0.4, 0.2, 0.1, 0.05, 0.025};
  std::vector<double> residuals;
  for (double l : lambdas) {
    ScatteringResult r = induced_classical(spec, l, h);
    LatticeFunction<double> res = r.g_lambda;
    res.add_scaled(-1.0 / l, h);
    res.add_scaled(-l, w);
    residuals.push_back(res.inf_norm());
  }
  FitResult fit = fit_loglog(lambdas, residuals);
  CHECK(fit.slope >= 2.9);
}

TEST_CASE("Born truncation matches the direct evaluation to the stated order") {
  CoupledOperatorSpec spec = fixture(1);
  LatticeFunction<double> h = fixture_smearing(1);
  const int order = 3;
  BornExpansion born = born_expand_induced(spec, h, order);
  auto diff_at = [&](double l) {
    LatticeFunction<double> poly = born.f.evaluate(l, spec.system.grid.with_components(1));
    return max_abs_diff(poly, induced_classical(spec, l, h).f_lambda);
  };
  // calibrate the prefactor at one lambda, check the order at another
  double c_est = diff_at(0.2) / std::pow(0.2, order + 1);
  CHECK(diff_at(0.1) <= 2.0 * c_est * std::pow(0.1, order + 1));
}

TEST_CASE("all odd Born coefficients of f vanish for unit weight exponents") {
  CoupledOperatorSpec spec = fixture(2);
  LatticeFunction<double> h = fixture_smearing(2);
  BornExpansion born = born_expand_induced(spec, h, 6);
  double scale = std::max(1.0, born.f.coeff_norm(0));
  for (int p = 1; p <= 5; p += 2) CHECK(born.f.coeff_norm(p) <= 1e-12 * scale);
  CHECK(born.f.coeff_norm(0) > 0.0);
  CHECK(born.f.coeff_norm(2) > 0.0);
}

TEST_CASE("Born expansion of vanishing couplings is empty") {
  CoupledOperatorSpec spec = fixture(1);
  spec.couplings[0].fill(0.0);
  BornExpansion born = born_expand_induced(spec, fixture_smearing(1), 4);
  CHECK(born.f.coeff.empty());
}

TEST_CASE("Born expansion handles the order-2k exponent layout") {
  CoupledOperatorSpec spec = fixture(2, 0.8, {1, 2}, {0, 1});
  LatticeFunction<double> h = fixture_smearing(2);
  BornExpansion born = born_expand_induced(spec, h, 4);
  CHECK(born.f.min_exponent() >= 0);
  auto diff_at = [&](double l) {
    LatticeFunction<double> poly = born.f.evaluate(l, spec.system.grid.with_components(1));
    return max_abs_diff(poly, induced_classical(spec, l, h).f_lambda);
  };
  double c_est = diff_at(0.2) / std::pow(0.2, 5);
  CHECK(diff_at(0.1) <= 2.0 * c_est * std::pow(0.1, 5) + 1e-14);
}

TEST_CASE("residual_order_fit measures second order and skips exact hits") {
  CoupledOperatorSpec spec = fixture(1);
  LatticeFunction<double> h = fixture_smearing(1);
  BornExpansion born = born_expand_induced(spec, h, 0);
  LatticeFunction<double> limit = born.f.coefficient(0, spec.system.grid.with_components(1));
  FitResult fit =
      residual_order_fit(spec, h, limit, {0.4, 0.2, 0.1, 0.05, 0.025});
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.06));

  // target equal to f at one grid point of the lambda grid: that sample is
  // excluded, the fit still works on the rest
  LatticeFunction<double> exact_target = induced_classical(spec, 0.1, h).f_lambda;
  FitResult fit2 = residual_order_fit(spec, h, exact_target, {0.4, 0.2, 0.1, 0.05, 0.012});
  CHECK(std::isfinite(fit2.slope));

  CHECK_THROWS_AS(residual_order_fit(spec, h, limit, {0.4, 0.2}), Error);
}

TEST_CASE("coupled solve matches the serial reference bit for bit") {
  CoupledOperatorSpec spec = fixture(3);
  SpacetimeGrid cg = spec.coupled_grid();
  LatticeFunction<double> F(cg);
  for (int c = 0; c < cg.components; ++c)
    for (int t = 14; t <= 26; ++t)
      for (int x = 0; x < cg.nx; ++x)
        F.at(c, t, x) = 2.0 * rng::uniform(77, std::uint64_t(c) * cg.nt + t, x) - 1.0;
  CHECK(max_abs_diff(coupled_advanced_green(spec, 0.37, F),
                     reference::coupled_advanced_green(spec, 0.37, F)) == 0.0);
}

#include "ams/experiment.hpp"

#include <cmath>
#include <numbers>

#include "ams/rng.hpp"

namespace ams {

namespace {

double bump1d(int i, int n) {
  // smooth cos^2 bump over n samples, 0 at the (virtual) edges
  double u = double(i + 1) / double(n + 1);
  double s = std::sin(std::numbers::pi * u);
  return s * s;
}

}  // namespace

LatticeFunction<double> make_box_bump(const SpacetimeGrid& g, int t_lo, int t_hi, SpatialArc arc,
                                      double amplitude) {
  LatticeFunction<double> f(g.with_components(1));
  for (int t = t_lo; t <= t_hi; ++t)
    for (int i = 0; i < arc.len; ++i) {
      int x = g.wrap(arc.start + i);
      f.at(0, t, x) = amplitude * bump1d(t - t_lo, t_hi - t_lo + 1) * bump1d(i, arc.len);
    }
  return f;
}

LatticeFunction<double> make_box_random(const SpacetimeGrid& g, int t_lo, int t_hi,
                                        SpatialArc arc, double amplitude, std::uint64_t seed) {
  LatticeFunction<double> f(g.with_components(1));
  for (int t = t_lo; t <= t_hi; ++t)
    for (int i = 0; i < arc.len; ++i) {
      int x = g.wrap(arc.start + i);
      double u = rng::uniform(seed, std::uint64_t(t), std::uint64_t(x));
      f.at(0, t, x) = amplitude * (2.0 * u - 1.0);
    }
  return f;
}

ExperimentSetup make_setup(const ExperimentConfig& cfg) {
  ExperimentSetup s;
  SpacetimeGrid g = cfg.grid();
  s.system = FieldOperatorSpec(g, {cfg.mass_system}, "system");
  s.probe_single = FieldOperatorSpec(g, {cfg.mass_probe}, "probe");
  SpatialArc arc{cfg.target_x_start, cfg.target_x_len};
  s.target = cfg.target_profile == "bump"
                 ? make_box_bump(g, cfg.target_t_lo, cfg.target_t_hi, arc,
                                 cfg.target_amplitude)
                 : make_box_random(g, cfg.target_t_lo, cfg.target_t_hi, arc,
                                   cfg.target_amplitude, cfg.target_seed);
  s.N = cfg.region_N();
  s.L = cfg.region_L();
  return s;
}

SchemeSpec make_scheme(const ExperimentConfig& cfg) {
  ExperimentSetup s = make_setup(cfg);
  return synthesize_scheme(s.system, s.probe_single, s.target, s.N, s.L, cfg.order_k);
}

GaussianState make_system_vacuum(const ExperimentConfig& cfg) {
  ExperimentSetup s = make_setup(cfg);
  return GaussianState::vacuum(s.system, cfg.reference_slice);
}

GaussianState make_system_state(const ExperimentConfig& cfg) {
  LatticeFunction<double> w = make_box_bump(
      cfg.grid(), cfg.shift_t_lo, cfg.shift_t_hi,
      {cfg.shift_x_start, cfg.shift_x_len}, cfg.shift_amplitude);
  return make_system_vacuum(cfg).with_coherent_shift(w);
}

GaussianState make_probe_state(const ExperimentConfig& cfg, const SchemeSpec& scheme) {
  return GaussianState::vacuum(scheme.coupled.probe, cfg.reference_slice, "probe vacuum");
}

ComplexField make_swap_source(const ExperimentConfig& cfg) {
  SpacetimeGrid g = cfg.grid();
  ComplexField F(g.with_components(1));
  SpatialArc arc{cfg.swap_source_x_start, cfg.swap_source_x_len};
  for (int t = cfg.swap_source_t_lo; t <= cfg.swap_source_t_hi; ++t)
    for (int i = 0; i < arc.len; ++i) {
      int x = g.wrap(arc.start + i);
      double re = 2.0 * rng::uniform(cfg.seed, 101, std::uint64_t(t) * g.nx + x) - 1.0;
      double im = 2.0 * rng::uniform(cfg.seed, 102, std::uint64_t(t) * g.nx + x) - 1.0;
      F.at(0, t, x) = {re, im};
    }
  return F;
}

}  // namespace ams

#pragma once

#include "ams/config.hpp"
#include "ams/measure.hpp"
#include "ams/swap.hpp"

namespace ams {

// Shared fixture construction for the CLI and the acceptance suite.

LatticeFunction<double> make_box_bump(const SpacetimeGrid& g, int t_lo, int t_hi, SpatialArc arc,
                                      double amplitude);
LatticeFunction<double> make_box_random(const SpacetimeGrid& g, int t_lo, int t_hi,
                                        SpatialArc arc, double amplitude, std::uint64_t seed);

struct ExperimentSetup {
  FieldOperatorSpec system;        // scalar
  FieldOperatorSpec probe_single;  // scalar probe dynamics
  LatticeFunction<double> target;
  Region N, L;
};

ExperimentSetup make_setup(const ExperimentConfig& cfg);
SchemeSpec make_scheme(const ExperimentConfig& cfg);

GaussianState make_system_vacuum(const ExperimentConfig& cfg);
GaussianState make_system_state(const ExperimentConfig& cfg);  // coherently shifted
GaussianState make_probe_state(const ExperimentConfig& cfg, const SchemeSpec& scheme);

ComplexField make_swap_source(const ExperimentConfig& cfg);

}  // namespace ams

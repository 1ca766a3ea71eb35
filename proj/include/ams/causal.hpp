#pragma once

#include "ams/grid.hpp"

namespace ams {

enum class Direction { past, future, both };

// Discrete causal cone: one spatial site per time step, periodic in x.
PointSet causal_future(const SpacetimeGrid& g, const PointSet& seed);
PointSet causal_past(const SpacetimeGrid& g, const PointSet& seed);
PointSet causal_cone(const SpacetimeGrid& g, const PointSet& seed, Direction dir);

PointSet causal_future(const SpacetimeGrid& g, const Region& r);
PointSet causal_past(const SpacetimeGrid& g, const Region& r);

// Conservative (inner-approximation) domain of dependence: a point belongs
// iff every discrete inextendible causal path through it meets the region.
PointSet domain_of_dependence(const SpacetimeGrid& g, const Region& r, Direction dir);
PointSet domain_of_dependence(const SpacetimeGrid& g, const PointSet& seed, Direction dir);

bool region_is_causally_convex(const SpacetimeGrid& g, const Region& r);

// Admissibility of a coupling region N, processing region L and target
// support: L must avoid the causal past of the target support and N must lie
// in the past domain of dependence of L.
bool check_admissible_geometry(const SpacetimeGrid& g, const Region& N, const Region& L,
                               const PointSet& f_support);

}  // namespace ams

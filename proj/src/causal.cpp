#include "ams/causal.hpp"

namespace ams {

namespace {

// Dilate a row by one site in each direction on the circle.
void dilate_row(const SpacetimeGrid& g, const PointSet& src, int t_from, PointSet& dst,
                int t_to) {
  for (int x = 0; x < g.nx; ++x) {
    if (src.test(t_from, x)) {
      dst.set(t_to, g.wrap(x - 1));
      dst.set(t_to, x);
      dst.set(t_to, g.wrap(x + 1));
    }
  }
}

}  // namespace

PointSet causal_future(const SpacetimeGrid& g, const PointSet& seed) {
  PointSet out = seed;
  for (int t = 0; t + 1 < g.nt; ++t) dilate_row(g, out, t, out, t + 1);
  return out;
}

PointSet causal_past(const SpacetimeGrid& g, const PointSet& seed) {
  PointSet out = seed;
  for (int t = g.nt - 1; t > 0; --t) dilate_row(g, out, t, out, t - 1);
  return out;
}

PointSet causal_cone(const SpacetimeGrid& g, const PointSet& seed, Direction dir) {
  switch (dir) {
    case Direction::future:
      return causal_future(g, seed);
    case Direction::past:
      return causal_past(g, seed);
    case Direction::both: {
      PointSet out = causal_future(g, seed);
      out.unite(causal_past(g, seed));
      return out;
    }
  }
  return seed;
}

PointSet causal_future(const SpacetimeGrid& g, const Region& r) {
  r.validate(g);
  return causal_future(g, r.mask(g));
}

PointSet causal_past(const SpacetimeGrid& g, const Region& r) {
  r.validate(g);
  return causal_past(g, r.mask(g));
}

PointSet domain_of_dependence(const SpacetimeGrid& g, const PointSet& seed, Direction dir) {
  PointSet out = seed;
  auto in = [&](const PointSet& s, int t, int x) { return s.test(t, g.wrap(x)); };
  if (dir == Direction::future || dir == Direction::both) {
    // p at t+1 belongs if all three causal predecessors belong.
    for (int t = 0; t + 1 < g.nt; ++t)
      for (int x = 0; x < g.nx; ++x)
        if (!out.test(t + 1, x) && in(out, t, x - 1) && in(out, t, x) && in(out, t, x + 1))
          out.set(t + 1, x);
  }
  if (dir == Direction::past || dir == Direction::both) {
    for (int t = g.nt - 1; t > 0; --t)
      for (int x = 0; x < g.nx; ++x)
        if (!out.test(t - 1, x) && in(out, t, x - 1) && in(out, t, x) && in(out, t, x + 1))
          out.set(t - 1, x);
  }
  return out;
}

PointSet domain_of_dependence(const SpacetimeGrid& g, const Region& r, Direction dir) {
  r.validate(g);
  return domain_of_dependence(g, r.mask(g), dir);
}

bool region_is_causally_convex(const SpacetimeGrid& g, const Region& r) {
  r.validate(g);
  PointSet m = r.mask(g);
  PointSet conv = causal_future(g, m);
  conv.intersect(causal_past(g, m));
  return conv == m;
}

bool check_admissible_geometry(const SpacetimeGrid& g, const Region& N, const Region& L,
                               const PointSet& f_support) {
  N.validate(g);
  L.validate(g);
  require(f_support.subset_of(N.mask(g)), ErrorKind::geometry,
          "check_admissible_geometry: target support must lie inside N");
  PointSet past_of_f = causal_past(g, f_support);
  if (L.mask(g).intersects(past_of_f)) return false;
  PointSet dminus = domain_of_dependence(g, L, Direction::past);
  return N.mask(g).subset_of(dminus);
}

}  // namespace ams

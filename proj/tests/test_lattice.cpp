#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ams/causal.hpp"
#include "ams/rng.hpp"
#include "oracles.hpp"

using namespace ams;

namespace {

SpacetimeGrid small_grid(int nt = 16, int nx = 16) {
  SpacetimeGrid g;
  g.nt = nt;
  g.nx = nx;
  g.dt = 0.5;
  g.dx = 1.0;
  g.components = 1;
  g.validate();
  return g;
}

PointSet point(const SpacetimeGrid& g, int t, int x) {
  PointSet ps(g.nt, g.nx);
  ps.set(t, x);
  return ps;
}

Region random_box(const SpacetimeGrid& g, std::uint64_t seed) {
  int t_lo = 2 + int(rng::uniform(seed, 0, 0) * (g.nt - 8));
  int t_hi = t_lo + int(rng::uniform(seed, 0, 1) * 3);
  int start = int(rng::uniform(seed, 0, 2) * g.nx);
  int len = 1 + int(rng::uniform(seed, 0, 3) * (g.nx / 2));
  return Region::box(t_lo, t_hi, {start, len});
}

}  // namespace

TEST_CASE("grid invariants are enforced") {
  SpacetimeGrid g = small_grid();
  CHECK_NOTHROW(g.validate());
  g.nt = 4;
  CHECK_THROWS_AS(g.validate(), Error);
  g = small_grid();
  g.dt = 2.0;  // CFL ratio 2
  CHECK_THROWS_AS(g.validate(), Error);
}

TEST_CASE("causal future of a point is the unit cone") {
  SpacetimeGrid g = small_grid();
  int t0 = 5, x0 = 8;
  PointSet cone = causal_future(g, point(g, t0, x0));
  for (int t = 0; t < g.nt; ++t)
    for (int x = 0; x < g.nx; ++x) {
      int d = std::abs(x - x0);
      d = std::min(d, g.nx - d);  // circle distance
      bool expected = t >= t0 && d <= t - t0;
      CHECK(cone.test(t, x) == expected);
    }
}

TEST_CASE("causal future of a full slab is everything above") {
  SpacetimeGrid g = small_grid();
  Region slab = Region::full_slab(4, 6);
  PointSet cone = causal_future(g, slab);
  for (int t = 0; t < g.nt; ++t)
    for (int x = 0; x < g.nx; ++x) CHECK(cone.test(t, x) == (t >= 4));
}

TEST_CASE("cones agree with the BFS oracle") {
  SpacetimeGrid g = small_grid();
  Region box = Region::box(6, 8, {12, 3});
  CHECK(causal_future(g, box) == oracles::bfs_causal(g, box.mask(g), true));
  CHECK(causal_past(g, box) == oracles::bfs_causal(g, box.mask(g), false));
  for (std::uint64_t s = 1; s <= 20; ++s) {
    Region r = random_box(g, s);
    CHECK(causal_future(g, r) == oracles::bfs_causal(g, r.mask(g), true));
    CHECK(causal_past(g, r) == oracles::bfs_causal(g, r.mask(g), false));
  }
}

TEST_CASE("J+ is monotone, idempotent and additive over unions") {
  SpacetimeGrid g = small_grid();
  for (std::uint64_t s = 30; s < 40; ++s) {
    Region a = random_box(g, s);
    Region b = random_box(g, s + 100);
    PointSet ja = causal_future(g, a);
    CHECK(a.mask(g).subset_of(ja));
    CHECK(causal_future(g, ja) == ja);
    PointSet uni = a.mask(g);
    uni.unite(b.mask(g));
    PointSet j_union = causal_future(g, uni);
    PointSet union_j = ja;
    union_j.unite(causal_future(g, b));
    CHECK(j_union == union_j);
  }
}

TEST_CASE("domain of dependence of a full slab covers the grid above and below") {
  SpacetimeGrid g = small_grid();
  Region slab = Region::full_slab(7, 8);
  PointSet d = domain_of_dependence(g, slab, Direction::both);
  for (int t = 0; t < g.nt; ++t)
    for (int x = 0; x < g.nx; ++x) CHECK(d.test(t, x));
}

TEST_CASE("forward domain of an arc shrinks one site per step") {
  SpacetimeGrid g = small_grid();
  int w = 7;
  Region arc = Region::box(4, 4, {3, w});
  PointSet d = domain_of_dependence(g, arc, Direction::future);
  for (int t = 4; t < g.nt; ++t) {
    int expected = std::max(0, w - 2 * (t - 4));
    int got = 0;
    for (int x = 0; x < g.nx; ++x) got += d.test(t, x);
    CHECK(got == expected);
  }
}

TEST_CASE("domain of dependence equals the path-enumeration oracle") {
  SpacetimeGrid g = small_grid();
  for (std::uint64_t s = 50; s < 62; ++s) {
    Region r = random_box(g, s);
    CHECK(domain_of_dependence(g, r, Direction::past) ==
          oracles::escape_domain(g, r.mask(g), true));
    CHECK(domain_of_dependence(g, r, Direction::future) ==
          oracles::escape_domain(g, r.mask(g), false));
  }
}

TEST_CASE("domain of dependence contains its region") {
  SpacetimeGrid g = small_grid();
  for (std::uint64_t s = 70; s < 80; ++s) {
    Region r = random_box(g, s);
    CHECK(r.mask(g).subset_of(domain_of_dependence(g, r, Direction::both)));
  }
}

TEST_CASE("causal convexity") {
  SpacetimeGrid g = small_grid();
  CHECK(region_is_causally_convex(g, Region::full_slab(3, 9)));
  CHECK(region_is_causally_convex(g, Region::box(5, 5, {4, 1})));  // single point
  // Tall, thin box on a small cylinder: future and past cones wrap around
  // the arc complement and their intersection strictly contains the box.
  Region tall = Region::box(3, 12, {0, 3});
  PointSet m = tall.mask(g);
  PointSet conv = causal_future(g, m);
  conv.intersect(causal_past(g, m));
  CHECK(conv.count() > m.count());  // oracle: direct set computation
  CHECK_FALSE(region_is_causally_convex(g, tall));
}

TEST_CASE("admissible geometry accepts a slab above and rejects overlap with the past") {
  SpacetimeGrid g = small_grid(32, 16);
  Region N = Region::box(8, 12, {4, 8});
  PointSet f_supp = Region::box(9, 10, {6, 4}).mask(g);
  CHECK(check_admissible_geometry(g, N, Region::full_slab(16, 24), f_supp));
  CHECK_FALSE(check_admissible_geometry(g, N, Region::full_slab(3, 5), f_supp));
  CHECK_THROWS_AS(
      check_admissible_geometry(g, Region::box(8, 12, {0, 2}), Region::full_slab(16, 24), f_supp),
      Error);  // f support outside N
}

TEST_CASE("marginal processing boxes validated against the path oracle") {
  SpacetimeGrid g = small_grid(16, 16);
  Region N = Region::box(4, 5, {6, 3});
  PointSet f_supp = N.mask(g);
  for (int len = 3; len <= 16; ++len) {
    Region L = Region::box(8, 10, {2, len});
    PointSet dminus = oracles::escape_domain(g, L.mask(g), true);
    bool expected = !L.mask(g).intersects(oracles::bfs_causal(g, f_supp, false)) &&
                    N.mask(g).subset_of(dminus);
    CHECK(check_admissible_geometry(g, N, L, f_supp) == expected);
  }
}

TEST_CASE("causal operations are deterministic") {
  SpacetimeGrid g = small_grid();
  Region r = random_box(g, 99);
  CHECK(causal_future(g, r) == causal_future(g, r));
  CHECK(domain_of_dependence(g, r, Direction::both) ==
        domain_of_dependence(g, r, Direction::both));
}

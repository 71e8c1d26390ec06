#include <doctest.h>

#include <vector>

#include "gen_util.hpp"
#include "ioch/hull_queries.hpp"
#include "ioch/stores.hpp"
#include "query_check.hpp"

using namespace ioch;
using PV = std::vector<Point>;

namespace {

using K = ExactKernel;

std::unique_ptr<HullStructure> filled(StructureKind s, const PV& pts, KernelKind k = KernelKind::Exact,
                                      StoreOptions opts = {}) {
  auto h = make_structure(s, k, opts);
  for (const Point& p : pts) h->insert(p);
  return h;
}

}  // namespace

TEST_CASE("query examples on every structure") {
  const StoreOptions small{2, 1024};
  for (StructureKind kind : kAllStructures) {
    CAPTURE(to_string(kind));
    const auto tri = filled(kind, PV{{0, 0}, {1, 2}, {3, 1}}, KernelKind::Exact, small);
    CHECK(*tri->extreme_point(make_direction(0, 1)) == Point{1, 2});
    CHECK(*tri->extreme_point(make_direction(1, 0)) == Point{3, 1});

    const auto h = filled(kind, PV{{0, 0}, {2, 2}, {4, 0}}, KernelKind::Exact, small);
    CHECK(h->line_hits_hull(Line({0, 1}, {1, 1})));
    CHECK_FALSE(h->line_hits_hull(Line({0, 5}, {1, 5})));

    const auto t = h->tangents_from_point({2, 5});
    REQUIRE(t.ok());
    CHECK(t->first == Point{0, 0});
    CHECK(t->second == Point{4, 0});
    const auto near_edge = h->tangents_from_point({1, 1.001});
    REQUIRE(near_edge.ok());
    CHECK(near_edge->first == Point{0, 0});
    CHECK(near_edge->second == Point{2, 2});
    CHECK(h->tangents_from_point({2, 1}).error() == ErrorCode::PointInsideHull);

    const auto cross = h->line_intersect(Line({0, 1}, {1, 1}));
    REQUIRE(cross);
    CHECK(cross->first == Point{1, 1});
    CHECK(cross->second == Point{3, 1});
    const auto touch = h->line_intersect(Line({0, 2}, {1, 2}));
    REQUIRE(touch);
    CHECK(touch->first == Point{2, 2});
    CHECK(touch->second == Point{2, 2});
    CHECK_FALSE(h->line_intersect(Line({0, 3}, {1, 3})));

    CHECK(h->contains({2, 2}));
    CHECK(h->contains({1, 0.5}));
    CHECK_FALSE(h->contains({1, 1.5}));
    const auto empty = make_structure(kind, KernelKind::Exact, small);
    CHECK_FALSE(empty->contains({0, 0}));
    CHECK(empty->extreme_point(make_direction(1, 1)).error() == ErrorCode::EmptyHull);
    CHECK(empty->tangents_from_point({0, 0}).error() == ErrorCode::EmptyHull);
    CHECK_FALSE(empty->line_intersect(Line({0, 0}, {1, 1})));
    CHECK_FALSE(empty->line_hits_hull(Line({0, 0}, {1, 1})));
  }
}

TEST_CASE("direction validation") {
  CHECK_THROWS_AS(make_direction(0, 0), ContractError);
  CHECK_THROWS_AS(make_direction(std::nan(""), 1), ContractError);
}

TEST_CASE("intersection_point is symmetric and exact at vertices") {
  const Line l({0, 1}, {5, 1});
  CHECK(intersection_point<K>(l, {0, 0}, {2, 2}) == Point{1, 1});
  CHECK(intersection_point<K>(l, {2, 2}, {0, 0}) == Point{1, 1});
  CHECK(intersection_point<K>(l, {3, 1}, {7, 9}) == Point{3, 1});
  SplitMix64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Point a{rng.uniform(-9, 9), rng.uniform(-9, 9)}, b{rng.uniform(-9, 9), rng.uniform(-9, 9)};
    const Line m({rng.uniform(-9, 9), rng.uniform(-9, 9)}, {rng.uniform(-9, 9), rng.uniform(-9, 9)});
    if (side_of<K>(m, a) * side_of<K>(m, b) >= 0) continue;
    const Point p = intersection_point<K>(m, a, b), r = oracle::exact_intersection(m, a, b);
    CHECK(p == intersection_point<K>(m, b, a));
    CHECK(std::abs(p.x - r.x) <= 1e-9 * (1 + std::abs(r.x)));
    CHECK(std::abs(p.y - r.y) <= 1e-9 * (1 + std::abs(r.y)));
  }
}

TEST_CASE("all queries match the oracles") {
  SplitMix64 rng(77);
  for (testgen::Cloud cloud : testgen::kClouds) {
    for (std::size_t n : {1, 2, 3, 7, 40, 300}) {
      for (int seed = 0; seed < 3; ++seed) {
        const PV pts = testgen::cloud(cloud, n, rng);
        for (StructureKind kind : kAllStructures) {
          const auto s = filled(kind, pts, KernelKind::Exact, StoreOptions{8, 64});
          const auto t = qcheck::check_queries<K>(*s, pts, 60, rng);
          CAPTURE(t.first);
          CHECK(t.mismatches == 0);
        }
      }
    }
  }
}

TEST_CASE("queries under the quadratic kernel on small integers") {
  SplitMix64 rng(78);
  for (testgen::Cloud cloud : {testgen::Cloud::Grid, testgen::Cloud::Parabola, testgen::Cloud::Line,
                               testgen::Cloud::Circle}) {
    const PV pts = testgen::cloud(cloud, 200, rng);
    for (StructureKind kind : kAllStructures) {
      const auto s = filled(kind, pts, KernelKind::Quadratic, StoreOptions{8, 64});
      const auto t = qcheck::check_queries<QuadraticKernel>(*s, pts, 60, rng);
      CAPTURE(t.first);
      CHECK(t.mismatches == 0);
    }
  }
}

TEST_CASE("extreme point is invariant under positive scaling of the direction") {
  SplitMix64 rng(79);
  const PV pts = testgen::cloud(testgen::Cloud::Uniform, 256, rng);
  const auto s = filled(StructureKind::Vector, pts);
  for (int i = 0; i < 100; ++i) {
    const double dx = rng.uniform(-1, 1), dy = rng.uniform(-1, 1), c = rng.uniform(0.01, 100);
    CHECK(*s->extreme_point(make_direction(dx, dy)) == *s->extreme_point(make_direction(c * dx, c * dy)));
  }
}

TEST_CASE("line_intersect points lie on the line") {
  SplitMix64 rng(80);
  const PV pts = testgen::cloud(testgen::Cloud::Uniform, 512, rng);
  const auto s = filled(StructureKind::Avl, pts);
  const PV hull = oracle::hull(pts);
  std::size_t seen = 0;
  for (const Line& l : qcheck::probe_lines(hull, 200, rng)) {
    const auto r = s->line_intersect(l);
    CHECK(r.has_value() == oracle::line_hits(hull, l));
    if (!r) continue;
    ++seen;
    for (const Point& p : {r->first, r->second}) {
      if (std::find(hull.begin(), hull.end(), p) != hull.end()) {
        CHECK(oracle::side(l, p) == 0);
        continue;
      }
      // Rounded crossing: distance to l within a few ulps of the scale.
      const double dx = l.q.x - l.p.x, dy = l.q.y - l.p.y;
      const double dist = std::abs(dx * (p.y - l.p.y) - dy * (p.x - l.p.x)) / std::hypot(dx, dy);
      CHECK(dist <= 1e-12 * 400);
    }
  }
  CHECK(seen > 20);
}

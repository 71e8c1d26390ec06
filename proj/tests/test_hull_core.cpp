#include <doctest.h>

#include <algorithm>
#include <vector>

#include "gen_util.hpp"
#include "ioch/hull_core.hpp"
#include "oracle.hpp"

using namespace ioch;
using PV = std::vector<Point>;

namespace {

using K = ExactKernel;

QuarterHull gamma_of(PV v) { return {std::move(v), Orientation::Gamma}; }

PV sorted(PV v) {
  std::sort(v.begin(), v.end(), xy_less);
  return v;
}

/// Gamma part of the oracle upper chain.
PV oracle_gamma(const PV& pts) {
  PV up = oracle::upper_chain(pts);
  up.resize(apex_index(up) + 1);
  return up;
}

}  // namespace

TEST_CASE("graham examples") {
  CHECK(graham<K>(PV{{0, 0}, {1, 2}, {2, 3}}).vertices == PV{{0, 0}, {1, 2}, {2, 3}});
  CHECK(graham<K>(PV{{0, 0}, {1, 1}, {2, 3}}).vertices == PV{{0, 0}, {2, 3}});
  CHECK(graham<K>(PV{{0, 0}, {1, 1}, {2, 2}}).vertices == PV{{0, 0}, {2, 2}});
  CHECK(oracle_gamma(PV{{0, 0}, {1, 2}, {2, 3}}) == PV{{0, 0}, {1, 2}, {2, 3}});
  CHECK(oracle_gamma(PV{{0, 0}, {1, 1}, {2, 3}}) == PV{{0, 0}, {2, 3}});
}

TEST_CASE("graham rejects bad input") {
  CHECK_THROWS_AS(graham<K>(PV{}), ContractError);
  CHECK_THROWS_AS(graham<K>(PV{{1, 0}, {0, 0}}), ContractError);
}

TEST_CASE("graham handles shared x and duplicates") {
  CHECK(graham<K>(PV{{0, 0}, {0, 1}, {1, 2}}).vertices == PV{{0, 1}, {1, 2}});
  CHECK(graham<K>(PV{{0, 0}, {0, 0}, {0, 0}}).vertices == PV{{0, 0}});
  CHECK(graham<K>(PV{{0, 5}, {1, 5}, {2, 5}}).vertices == PV{{0, 5}});
}

TEST_CASE("scan examples") {
  CHECK(scan<K>(gamma_of({{0, 0}, {1, 3}, {2, 5}, {3, 6}}), {4, 10}).vertices == PV{{0, 0}, {1, 3}, {4, 10}});
  CHECK(scan<K>(gamma_of({{0, 0}}), {1, 1}).vertices == PV{{0, 0}, {1, 1}});
  CHECK(scan<K>(gamma_of({{0, 0}, {1, 2}}), {2, 4}).vertices == PV{{0, 0}, {2, 4}});
  CHECK(oracle_gamma({{0, 0}, {1, 3}, {2, 5}, {3, 6}, {4, 10}}) == PV{{0, 0}, {1, 3}, {4, 10}});
  CHECK_THROWS_AS(scan<K>(gamma_of({{0, 0}, {1, 2}}), {0.5, 4}), ContractError);
  CHECK_THROWS_AS(scan<K>(gamma_of({{0, 0}, {1, 2}}), {3, 1}), ContractError);
}

TEST_CASE("quick_scan examples") {
  const PV h1{{0, 0}, {1, 3}, {2, 5}, {3, 6}};
  CHECK(quick_scan<K>(SpanView{h1}, {4, 10}) == 1);
  const PV h2{{0, 0}, {1, 1}};
  CHECK(quick_scan<K>(SpanView{h2}, {2, 1.5}) == 1);
  CHECK(scan<K>(gamma_of(h2), {2, 1.5}).vertices == PV{{0, 0}, {1, 1}, {2, 1.5}});
  const PV h3{{0, 0}, {2, 5}};
  CHECK(quick_scan<K>(SpanView{h3}, {3, 6}) == 1);
}

TEST_CASE("quick_insert examples") {
  const PV e1{{0, 0}, {2, 3}, {3, 3.8}, {5, 4}};
  CHECK(quick_insert<K>(gamma_of({{0, 0}, {2, 3}, {5, 4}}), {3, 3.8}).vertices == e1);
  CHECK(oracle_gamma(e1) == e1);
  const PV e2{{0, 0.5}, {2, 2}};
  CHECK(quick_insert<K>(gamma_of({{1, 1}, {2, 2}}), {0, 0.5}).vertices == e2);
  CHECK(oracle_gamma({{1, 1}, {2, 2}, {0, 0.5}}) == e2);
  CHECK(quick_insert<K>(gamma_of({{0, 0}}), {1, 5}).vertices == PV{{0, 0}, {1, 5}});
  CHECK_THROWS_AS(quick_insert<K>(gamma_of({{0, 0}, {2, 3}, {5, 4}}), {3, 1}), ContractError);
  CHECK_THROWS_AS(quick_insert<K>(gamma_of({{0, 0}, {2, 3}, {5, 4}}), {2, 3}), ContractError);
}

TEST_CASE("compose_upper examples") {
  const UpperHull u = compose_upper(gamma_of({{0, 0}, {1, 2}}), {{{1, 2}, {3, 1}}, Orientation::Nabla});
  CHECK(u.chain() == PV{{0, 0}, {1, 2}, {3, 1}});
  CHECK(u.apex == Point{1, 2});
  const UpperHull single = compose_upper(gamma_of({{0, 0}}), {{{0, 0}}, Orientation::Nabla});
  CHECK(single.chain() == PV{{0, 0}});
  CHECK_THROWS_AS(compose_upper(gamma_of({{0, 0}, {1, 2}}), {{{1, 3}, {3, 1}}, Orientation::Nabla}), ContractError);
}

TEST_CASE("split_upper puts the apex at the leftmost top vertex") {
  const PV chain{{0, 0}, {1, 3}, {2, 3}, {4, 0}};
  const UpperHull u = split_upper(chain);
  CHECK(u.gamma.vertices == PV{{0, 0}, {1, 3}});
  CHECK(u.nabla.vertices == PV{{1, 3}, {2, 3}, {4, 0}});
  validate(u.gamma);
  validate(u.nabla);
}

TEST_CASE("validate catches broken quarter hulls") {
  CHECK_THROWS_AS(validate(gamma_of({{0, 0}, {1, 1}, {2, 2}})), ContractError);
  CHECK_THROWS_AS(validate(gamma_of({{0, 0}, {1, 2}, {2, 1}})), ContractError);
  CHECK_THROWS_AS(validate(QuarterHull{{{0, 3}, {1, 2}, {2, 2}}, Orientation::Nabla}), ContractError);
  validate(QuarterHull{{{0, 3}, {1, 3}, {2, 2}}, Orientation::Nabla});
}

TEST_CASE("hull_boundary lists shared endpoints once") {
  CHECK(hull_boundary(PV{{0, 0}, {1, 1}, {2, 0}}, PV{{0, 0}, {2, 0}}) == PV{{0, 0}, {1, 1}, {2, 0}});
  CHECK(hull_boundary(PV{{0, 2}}, PV{{0, 0}}) == PV{{0, 2}, {0, 0}});
  CHECK(hull_boundary(PV{{3, 3}}, PV{{3, -3}}) == PV{{3, 3}});
}

TEST_CASE("graham equals the gift-wrapping oracle") {
  SplitMix64 rng(101);
  for (auto c : testgen::kClouds) {
    for (int t = 0; t < 60; ++t) {
      const PV pts = testgen::cloud(c, 1 + rng.below(200), rng);
      const PV s = sorted(pts);
      REQUIRE(graham_upper<K>(s) == oracle::upper_chain(pts));
      REQUIRE(graham<K>(s).vertices == oracle_gamma(pts));
      const auto [up, lo] = build_chains<K>(pts);
      REQUIRE(hull_boundary(up, lo) == oracle::hull(pts));
      validate(graham<K>(s));
    }
  }
}

TEST_CASE("scan and quick_scan agree") {
  SplitMix64 rng(202);
  for (int t = 0; t < 3000; ++t) {
    PV pts = testgen::cloud(t % 2 ? testgen::Cloud::Uniform : testgen::Cloud::Grid, 2 + rng.below(60), rng);
    const QuarterHull h = graham<K>(sorted(pts));
    const Point last = h.vertices.back();
    const Point q{last.x + 1 + static_cast<double>(rng.below(5)), last.y + 1 + static_cast<double>(rng.below(300))};
    std::size_t popped = 0;
    const QuarterHull scanned = scan<K>(h, q, &popped);
    const std::size_t i = quick_scan<K>(SpanView{h.vertices}, q);
    PV cut(h.vertices.begin(), h.vertices.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    cut.push_back(q);
    REQUIRE(scanned.vertices == cut);
    REQUIRE(popped == h.size() - i - 1);
  }
}

TEST_CASE("quick_insert in any order reproduces graham") {
  SplitMix64 rng(303);
  for (auto c : testgen::kClouds) {
    for (int t = 0; t < 40; ++t) {
      PV pts = testgen::cloud(c, 1 + rng.below(300), rng);
      QuarterHull h;
      std::size_t popped = 0;
      for (const Point& p : pts) {
        const auto& v = h.vertices;
        const bool in_range = !v.empty() && p.x >= v.front().x && p.x <= v.back().x;
        if (in_range && !locate_splice<K>(SpanChain{v}, p)) continue;
        h = quick_insert<K>(h, p, &popped);
        validate(h);
      }
      REQUIRE(h.vertices == graham<K>(sorted(pts)).vertices);
    }
  }
}

TEST_CASE("upper chain insertion matches the oracle and pops at most n vertices") {
  SplitMix64 rng(404);
  for (auto c : testgen::kClouds) {
    for (int t = 0; t < 40; ++t) {
      const PV pts = testgen::cloud(c, 1 + rng.below(400), rng);
      PV chain;
      std::size_t popped = 0, inserted = 0;
      for (const Point& p : pts) {
        const InsertResult r = insert_upper<K>(chain, p);
        popped += r.popped;
        inserted += r.changed;
      }
      REQUIRE(chain == oracle::upper_chain(pts));
      REQUIRE(popped <= pts.size());
      REQUIRE(popped + chain.size() == inserted);
    }
  }
}

TEST_CASE("insert_upper is idempotent and ignores points on the chain") {
  PV chain{{0, 0}, {2, 2}, {4, 0}};
  const PV before = chain;
  CHECK_FALSE(insert_upper<K>(chain, {1, 1}).changed);
  CHECK_FALSE(insert_upper<K>(chain, {2, 2}).changed);
  CHECK_FALSE(insert_upper<K>(chain, {2, 1}).changed);
  CHECK(chain == before);
  CHECK(insert_upper<K>(chain, {2, 3}).changed);
  CHECK(chain == PV{{0, 0}, {2, 3}, {4, 0}});
  CHECK_FALSE(insert_upper<K>(chain, {2, 3}).changed);
}

TEST_CASE("both hull oracles agree") {
  SplitMix64 rng(7);
  for (auto c : testgen::kClouds)
    for (int t = 0; t < 80; ++t) {
      const PV pts = testgen::cloud(c, rng.below(120), rng);
      REQUIRE(oracle::hull_sorted(pts) == oracle::hull(pts));
    }
  CHECK(oracle::hull_sorted(PV{}).empty());
  CHECK(oracle::hull_sorted(PV{{1, 1}, {1, 1}}) == PV{{1, 1}});
  CHECK(oracle::hull_sorted(PV{{0, 0}, {0, 3}}) == PV{{0, 3}, {0, 0}});
}

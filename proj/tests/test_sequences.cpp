#include <doctest.h>

#include <algorithm>
#include <vector>

#include "ioch/avl_tree.hpp"
#include "ioch/btree.hpp"
#include "ioch/random.hpp"

using namespace ioch;
using PV = std::vector<Point>;

namespace {

PV keys(std::size_t n) {
  PV v;
  for (std::size_t i = 0; i < n; ++i) v.push_back({static_cast<double>(i), static_cast<double>(i % 7)});
  return v;
}

template <class Seq>
void fill(Seq& s, const PV& v) {
  for (const Point& p : v) s.insert_at(s.size(), p);
}

template <class Seq>
void check_against(const Seq& s, const PV& ref) {
  s.check_invariants();
  REQUIRE(s.size() == ref.size());
  REQUIRE(s.to_vector() == ref);
}

/// Random splices on x-sorted content, compared with std::vector and with
/// linear versions of the searches after every step.
template <class Seq>
void fuzz(Seq& s, std::uint64_t seed, int steps) {
  SplitMix64 rng(seed);
  PV ref;
  for (int t = 0; t < steps; ++t) {
    const std::size_t n = ref.size();
    const std::size_t lo = n ? rng.below(n + 1) : 0;
    const std::size_t len = rng.below(4) == 0 ? rng.below(n - lo + 1) : std::min<std::size_t>(rng.below(3), n - lo);
    const bool put = rng.below(5) != 0;
    // Keep x strictly increasing: rebuild keys by position afterwards.
    const Point q{0, rng.uniform(0, 1)};
    s.replace_range(lo, lo + len, put ? &q : nullptr);
    ref.erase(ref.begin() + static_cast<std::ptrdiff_t>(lo), ref.begin() + static_cast<std::ptrdiff_t>(lo + len));
    if (put) ref.insert(ref.begin() + static_cast<std::ptrdiff_t>(lo), q);
    check_against(s, ref);
    if (ref.size() >= 2) {
      // partition_point against a linear scan with a threshold predicate.
      const std::size_t cut = rng.below(ref.size());
      const std::size_t a = rng.below(ref.size()), b = rng.below(ref.size());
      const std::size_t plo = std::min(a, b), phi = std::max(a, b);
      const std::size_t got = s.partition_point(plo, phi, [&](std::size_t j, const Point& u, const Point& v) {
        REQUIRE(u == ref[j]);
        REQUIRE(v == ref[j + 1]);
        return j < cut;
      });
      REQUIRE(got == std::clamp(cut, plo, phi));
    }
    for (std::size_t probe = 0; probe < 3 && !ref.empty(); ++probe) {
      const std::size_t i = rng.below(ref.size());
      REQUIRE(s.at(i) == ref[i]);
    }
  }
  // lower_bound_x on an x-sorted rebuild.
  s.erase_range(0, s.size());
  REQUIRE(s.size() == 0);
  const PV sorted = keys(300);
  fill(s, sorted);
  for (double x = -1; x < 302; x += 0.5) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), x, [](const Point& p, double v) { return p.x < v; });
    REQUIRE(s.lower_bound_x(x) == static_cast<std::size_t>(it - sorted.begin()));
  }
}

}  // namespace

TEST_CASE("avl balanced_delete_range examples") {
  AvlSequence t;
  fill(t, keys(1000));
  PV ref = keys(1000);
  t.erase_range(200, 200);
  check_against(t, ref);
  t.erase_range(200, 700);
  ref.erase(ref.begin() + 200, ref.begin() + 700);
  check_against(t, ref);
  t.erase_range(0, t.size());
  check_against(t, {});
  CHECK_THROWS_AS(t.erase_range(0, 1), ContractError);
}

TEST_CASE("avl height stays within the AVL bound under random splices") {
  AvlSequence t;
  fuzz(t, 1, 3000);
  AvlSequence big;
  fill(big, keys(1 << 14));
  big.check_invariants();
  CHECK(big.height() <= 1.4405 * std::log2((1 << 14) + 2.0));
}

TEST_CASE("btree balanced_delete_range examples") {
  for (std::size_t nb : {16u, 64u, 256u, 1024u, 4096u}) {
    CAPTURE(nb);
    BtreeSequence t(nb);
    fill(t, keys(1000));
    PV ref = keys(1000);
    check_against(t, ref);
    t.erase_range(200, 200);
    check_against(t, ref);
    t.erase_range(200, 700);
    ref.erase(ref.begin() + 200, ref.begin() + 700);
    check_against(t, ref);
    t.erase_range(0, t.size());
    check_against(t, {});
    CHECK(t.leaf_count() == 0);
    CHECK(t.internal_count() == 0);
    CHECK_THROWS_AS(t.erase_range(0, 1), ContractError);
  }
}

TEST_CASE("btree invariants hold under random splices") {
  for (std::size_t nb : {16u, 48u, 100u, 1024u}) {
    CAPTURE(nb);
    BtreeSequence t(nb);
    fuzz(t, nb, 3000);
  }
}

TEST_CASE("btree capacities derive from node bytes") {
  BtreeSequence d;
  CHECK(d.leaf_capacity() == 64);
  CHECK(d.internal_capacity() == 1024 / 48);
  BtreeSequence tiny(16);
  CHECK(tiny.leaf_capacity() == 3);
  CHECK(tiny.internal_capacity() == 3);
  CHECK(d.memory_bytes() == 0);
}

TEST_CASE("avl memory is node count times node size") {
  AvlSequence t;
  fill(t, keys(10));
  CHECK(t.node_count() == 10);
  CHECK(AvlSequence::node_bytes() == 48);
}

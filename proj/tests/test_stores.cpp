#include <doctest.h>

#include <algorithm>
#include <vector>

#include "gen_util.hpp"
#include "ioch/datagen.hpp"
#include "ioch/stores.hpp"
#include "oracle.hpp"

using namespace ioch;
using PV = std::vector<Point>;

namespace {

using K = ExactKernel;

std::unique_ptr<HullStructure> filled(StructureKind s, const PV& pts, StoreOptions opts = {}) {
  auto h = make_structure(s, KernelKind::Exact, opts);
  for (const Point& p : pts) h->insert(p);
  return h;
}

void shuffle(PV& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace

TEST_CASE("structure names round-trip") {
  for (StructureKind s : kAllStructures) CHECK(parse_structure(to_string(s)) == s);
  CHECK_FALSE(parse_structure("heap"));
}

TEST_CASE("store insertion examples") {
  for (StructureKind kind : kAllStructures) {
    CAPTURE(to_string(kind));
    auto s = make_structure(kind, KernelKind::Exact, {2, 1024});
    CHECK(s->hull_size() == 0);
    s->insert({0, 0});
    CHECK(s->hull_size() == 1);
    for (Point p : PV{{4, 0}, {2, 1}, {2, 0.2}}) s->insert(p);
    CHECK(s->vertices() == PV{{0, 0}, {2, 1}, {4, 0}});
    CHECK(s->vertices() == oracle::hull(PV{{0, 0}, {4, 0}, {2, 1}, {2, 0.2}}));
    CHECK_THROWS_AS(s->insert({std::nan(""), 0}), ContractError);
    CHECK_THROWS_AS(s->insert({0, INFINITY}), ContractError);
  }
}

TEST_CASE("512 points in convex position stay on the hull") {
  SplitMix64 rng(3);
  PV pts;
  for (int x = -256; x < 256; ++x) pts.push_back({double(x), double(x) * x});
  shuffle(pts, rng);
  for (StructureKind kind : kAllStructures) {
    CAPTURE(to_string(kind));
    CHECK(filled(kind, pts)->hull_size() == 512);
  }
  const PV circle = generate({Distribution::Circle, 512, 11});
  const std::size_t want = oracle::hull(circle).size();
  CHECK(want >= 500);
  for (StructureKind kind : kAllStructures) CHECK(filled(kind, circle)->hull_size() == want);
}

TEST_CASE("every structure reproduces the canonical hull") {
  SplitMix64 rng(21);
  for (testgen::Cloud cloud : testgen::kClouds) {
    for (std::size_t n : {0, 1, 2, 5, 16, 128, 700}) {
      for (int seed = 0; seed < 4; ++seed) {
        const PV pts = testgen::cloud(cloud, n, rng);
        const PV want = oracle::hull(pts);
        for (StructureKind kind : kAllStructures) {
          for (std::size_t cap : {2, 8, 512}) {
            CAPTURE(to_string(kind));
            CAPTURE(cap);
            const auto s = filled(kind, pts, {cap, 64});
            CHECK(s->vertices() == want);
            CHECK(s->hull_size() == want.size());
            CHECK(s->upper_chain() == oracle::upper_chain(pts));
            CHECK(s->lower_chain_flipped() == oracle::lower_chain_flipped(pts));
          }
        }
      }
    }
  }
  for (Distribution d : kAllDistributions) {
    const PV pts = generate({d, 4096, 5});
    const PV want = oracle::hull(pts);
    for (StructureKind kind : kAllStructures) CHECK(filled(kind, pts)->vertices() == want);
  }
}

TEST_CASE("tree invariants hold after every insertion") {
  SplitMix64 rng(8);
  for (testgen::Cloud cloud : testgen::kClouds) {
    const PV pts = testgen::cloud(cloud, 600, rng);
    ChainStore<K, AvlSequence> avl(StructureKind::Avl, {});
    ChainStore<K, BtreeSequence> bt(StructureKind::Btree, {512, 48});
    for (const Point& p : pts) {
      avl.insert(p);
      bt.insert(p);
      avl.chains().upper().check_invariants();
      avl.chains().lower().check_invariants();
      bt.chains().upper().check_invariants();
      bt.chains().lower().check_invariants();
    }
    CHECK(avl.vertices() == bt.vertices());
  }
}

TEST_CASE("insertion is idempotent") {
  SplitMix64 rng(9);
  const PV pts = testgen::cloud(testgen::Cloud::Uniform, 300, rng);
  for (StructureKind kind : kAllStructures) {
    auto s = filled(kind, pts, {8, 64});
    const PV before = s->vertices();
    for (const Point& p : pts) s->insert(p);
    for (const Point& p : before) s->insert(p);
    CHECK(s->vertices() == before);
  }
}

TEST_CASE("balanced_delete_range") {
  AvlSequence a;
  BtreeSequence b(64);
  PV ref;
  for (int i = 0; i < 1000; ++i) {
    const Point p{double(i), double(-i % 7)};
    a.insert_at(a.size(), p);
    b.insert_at(b.size(), p);
    ref.push_back(p);
  }
  balanced_delete_range(a, 10, 10);
  balanced_delete_range(b, 10, 10);
  CHECK(a.to_vector() == ref);
  balanced_delete_range(a, 200, 700);
  balanced_delete_range(b, 200, 700);
  ref.erase(ref.begin() + 200, ref.begin() + 700);
  CHECK(a.to_vector() == ref);
  CHECK(b.to_vector() == ref);
  a.check_invariants();
  b.check_invariants();
  CHECK_THROWS_AS(balanced_delete_range(a, 5, 4), ContractError);
  CHECK_THROWS_AS(balanced_delete_range(b, 0, 501), ContractError);
  balanced_delete_range(a, 0, a.size());
  balanced_delete_range(b, 0, b.size());
  CHECK(a.empty());
  CHECK(b.empty());
}

TEST_CASE("memory accounting") {
  for (StructureKind kind : kAllStructures) {
    const auto s = make_structure(kind, KernelKind::Exact);
    CHECK(s->memory_bytes() == kStoreHeaderBytes);
    CHECK(s->peak_bytes() == kStoreHeaderBytes);
  }
  const PV circle = generate({Distribution::Circle, 1 << 12, 1});
  const auto v = filled(StructureKind::Vector, circle);
  const auto a = filled(StructureKind::Avl, circle);
  const auto b = filled(StructureKind::Btree, circle);
  CHECK(v->memory_bytes() < a->memory_bytes());
  CHECK(v->peak_bytes() >= v->memory_bytes());
  // AVL: 48 bytes per stored vertex, both chains.
  const std::size_t stored = v->upper_chain().size() + v->lower_chain_flipped().size();
  CHECK(a->memory_bytes() == kStoreHeaderBytes + 48 * stored);
  CHECK(b->memory_bytes() > kStoreHeaderBytes + 16 * stored);

  // Vector capacity policy: 16, 32, 64, ...
  VectorChain c;
  CHECK(c.memory_bytes() == 0);
  for (int i = 0; i < 17; ++i) {
    const Point p{double(i), 0};
    c.replace_range(c.size(), c.size(), &p);
  }
  CHECK(c.capacity() == 32);
  CHECK(c.memory_bytes() == 32 * 16);
}

#pragma once

// Quarter hulls and the Graham-scan family of algorithms.
//
// Everything here works on "upper chains": point sequences with strictly
// increasing x whose consecutive edge slopes strictly decrease. A quarter hull
// is a chain whose slopes additionally keep one sign. Right-to-left work and
// lower hulls reuse the same code through the coordinate-flipping views below.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ioch/point.hpp"
#include "ioch/predicates.hpp"

namespace ioch {

template <class V>
concept ChainView = requires(const V& v, std::size_t i) {
  { v.size() } -> std::convertible_to<std::size_t>;
  { v[i] } -> std::convertible_to<Point>;
};

struct SpanView {
  std::span<const Point> pts;
  std::size_t size() const { return pts.size(); }
  Point operator[](std::size_t i) const { return pts[i]; }
};

/// The base chain read right to left with x negated, which turns a chain
/// that must be extended on its left into one extended on its right.
template <ChainView V>
struct MirrorView {
  const V& base;
  std::size_t size() const { return base.size(); }
  Point operator[](std::size_t i) const { return flip_x(base[base.size() - 1 - i]); }
};

/// Loose pop test of the scan: drop v when slope(u, v) <= slope(v, q).
/// Collinear vertices are dropped, which keeps every hull canonical.
template <class K>
bool pops(const Point& u, const Point& v, const Point& q) {
  return !K::slope_less(v, q, u, v);
}

/// Partition index of a chain s_0..s_m against a point q right of s_m: the
/// smallest edge index i whose far endpoint would be popped, or m if none.
/// Appending q after s_0..s_i gives the same chain as a linear scan.
template <class K, ChainView V>
std::size_t quick_scan(const V& chain, const Point& q) {
  const std::size_t n = chain.size();
  if (n == 0) throw ContractError("quick_scan on an empty chain");
  std::size_t lo = 0, hi = n - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (pops<K>(chain[mid], chain[mid + 1], q))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

/// Upper chain of x-sorted points (ties broken by y) in one linear pass.
template <class K>
std::vector<Point> graham_upper(std::span<const Point> sorted) {
  std::vector<Point> chain;
  chain.reserve(std::min<std::size_t>(sorted.size(), 64));
  for (const Point& p : sorted) {
    if (!chain.empty() && chain.back().x == p.x) {
      if (chain.back() == p) continue;
      chain.pop_back();  // directly below p
    }
    while (chain.size() >= 2 && pops<K>(chain[chain.size() - 2], chain.back(), p)) chain.pop_back();
    chain.push_back(p);
  }
  return chain;
}

/// Index of the apex: the leftmost vertex of maximum y.
std::size_t apex_index(std::span<const Point> chain);

/// A chain supporting the searches needed for insertion and queries.
/// partition_point(lo, hi, pred) returns the first edge index j in [lo, hi)
/// for which pred(j, s_j, s_{j+1}) is false (hi if none); pred must be
/// monotone (true then false) and hi <= size() - 1.
template <class C>
concept SearchableChain = requires(const C& c, std::size_t i, double x) {
  { c.size() } -> std::convertible_to<std::size_t>;
  { c.at(i) } -> std::convertible_to<Point>;
  { c.lower_bound_x(x) } -> std::convertible_to<std::size_t>;
};

/// Read-only chain over contiguous storage.
struct SpanChain {
  std::span<const Point> pts;

  std::size_t size() const { return pts.size(); }
  Point at(std::size_t i) const { return pts[i]; }
  std::size_t lower_bound_x(double x) const {
    return static_cast<std::size_t>(
        std::lower_bound(pts.begin(), pts.end(), x, [](const Point& p, double v) { return p.x < v; }) -
        pts.begin());
  }
  template <class Pred>
  std::size_t partition_point(std::size_t lo, std::size_t hi, Pred pred) const {
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (pred(mid, pts[mid], pts[mid + 1]))
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }
};

/// Where q goes in an upper chain: vertices [0, keep_left) and
/// [keep_right, n) survive and q is placed between them.
struct Splice {
  std::size_t keep_left = 0;
  std::size_t keep_right = 0;
  std::size_t removed() const { return keep_right - keep_left; }
};

/// Locates the splice for q, or nullopt when q is on or under the chain.
/// Both sides are binary searches with the quick_scan condition; the right
/// side is the left side's mirror image.
template <class K, class C>
std::optional<Splice> locate_splice(const C& chain, const Point& q) {
  const std::size_t n = chain.size();
  if (n == 0) return Splice{0, 0};
  const std::size_t r = chain.lower_bound_x(q.x);
  std::size_t right_begin = r;
  if (r < n) {
    const Point at_r = chain.at(r);
    if (at_r.x == q.x) {
      if (q.y <= at_r.y) return std::nullopt;
      right_begin = r + 1;
    } else if (r > 0 && K::side(chain.at(r - 1), at_r, q) <= 0) {
      return std::nullopt;
    }
  }
  Splice s{0, n};
  if (r > 0) {
    s.keep_left =
        chain.partition_point(0, r - 1, [&](std::size_t, const Point& a, const Point& b) { return !pops<K>(a, b, q); }) +
        1;
  }
  if (right_begin < n) {
    const Point mq = flip_x(q);
    s.keep_right = chain.partition_point(right_begin, n - 1, [&](std::size_t, const Point& a, const Point& b) {
      return pops<K>(flip_x(b), flip_x(a), mq);
    });
  }
  return s;
}

struct InsertResult {
  bool changed = false;
  std::size_t popped = 0;
};

/// Inserts q into an upper chain held in a vector. Points on or under the
/// chain leave it untouched.
template <class K>
InsertResult insert_upper(std::vector<Point>& chain, const Point& q) {
  const auto s = locate_splice<K>(SpanChain{chain}, q);
  if (!s) return {};
  const auto left = static_cast<std::ptrdiff_t>(s->keep_left);
  if (s->removed() == 0) {
    chain.insert(chain.begin() + left, q);
  } else {
    chain[s->keep_left] = q;
    chain.erase(chain.begin() + left + 1, chain.begin() + static_cast<std::ptrdiff_t>(s->keep_right));
  }
  return {true, s->removed()};
}

enum class Orientation { Gamma, Nabla };

/// One quarter of the hull. Gamma runs from the leftmost point up to the
/// apex (positive slopes); Nabla from the apex down to the rightmost point
/// (non-positive slopes, only the first edge may be flat). Vertices are
/// stored left to right in both cases.
struct QuarterHull {
  std::vector<Point> vertices;
  Orientation orientation = Orientation::Gamma;

  std::size_t size() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }
  friend bool operator==(const QuarterHull&, const QuarterHull&) = default;
};

/// Throws ContractError unless h satisfies its orientation's invariants
/// (checked exactly).
void validate(const QuarterHull& h);

/// CH^Γ of x-sorted points.
template <class K>
QuarterHull graham(std::span<const Point> sorted) {
  if (sorted.empty()) throw ContractError("graham needs at least one point");
  if (!std::is_sorted(sorted.begin(), sorted.end(), xy_less))
    throw ContractError("graham input must be sorted by x, then y");
  std::vector<Point> chain = graham_upper<K>(sorted);
  chain.resize(apex_index(chain) + 1);
  return {std::move(chain), Orientation::Gamma};
}

/// Linear Scan step: appends q, a new apex right of and above h's last vertex.
/// `popped`, when given, accumulates the number of removed vertices.
template <class K>
QuarterHull scan(QuarterHull h, const Point& q, std::size_t* popped = nullptr) {
  if (h.orientation != Orientation::Gamma) throw ContractError("scan expects a Gamma hull");
  if (!h.empty() && !(q.x > h.vertices.back().x && q.y > h.vertices.back().y))
    throw ContractError("scan point must lie right of and above the last vertex");
  auto& v = h.vertices;
  while (v.size() >= 2 && pops<K>(v[v.size() - 2], v.back(), q)) {
    v.pop_back();
    if (popped) ++*popped;
  }
  v.push_back(q);
  return h;
}

/// QuickIns on a Gamma quarter hull: split at q, binary-search both sides,
/// cut the popped ranges, splice q in. Equals graham over vertices ∪ {q}.
template <class K>
QuarterHull quick_insert(QuarterHull h, const Point& q, std::size_t* popped = nullptr) {
  if (h.orientation != Orientation::Gamma) throw ContractError("quick_insert expects a Gamma hull");
  auto& v = h.vertices;
  if (!v.empty()) {
    if (q.x > v.back().x && q.y <= v.back().y) return h;  // belongs to the Nabla side
    if (q.x >= v.front().x && q.x <= v.back().x && !locate_splice<K>(SpanChain{v}, q))
      throw ContractError("quick_insert point is not above the hull");
  }
  const InsertResult res = insert_upper<K>(v, q);
  if (popped) *popped += res.popped;
  v.resize(apex_index(v) + 1);
  return h;
}

/// Upper hull as its two quarters sharing the apex.
struct UpperHull {
  QuarterHull gamma;
  QuarterHull nabla{{}, Orientation::Nabla};
  Point apex;

  /// gamma followed by nabla with the shared apex once.
  std::vector<Point> chain() const;
};

UpperHull compose_upper(QuarterHull gamma, QuarterHull nabla);

/// Splits a non-empty upper chain at its apex.
UpperHull split_upper(std::span<const Point> chain);

/// Both hull halves. `lower` is the upper hull of the y-negated points.
struct FullHull {
  UpperHull upper;
  UpperHull lower;
};

/// Closed hull boundary, clockwise from the leftmost-highest point: the upper
/// chain left to right, then the lower chain right to left, endpoints shared
/// by both chains listed once. `lower_flipped` is in y-negated coordinates.
std::vector<Point> hull_boundary(std::span<const Point> upper, std::span<const Point> lower_flipped);

/// Upper chain and flipped lower chain of an arbitrary point set.
template <class K>
std::pair<std::vector<Point>, std::vector<Point>> build_chains(std::span<const Point> points) {
  std::vector<Point> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), xy_less);
  std::vector<Point> upper = graham_upper<K>(sorted);
  for (Point& p : sorted) p = flip_y(p);
  std::sort(sorted.begin(), sorted.end(), xy_less);
  std::vector<Point> lower = graham_upper<K>(sorted);
  return {std::move(upper), std::move(lower)};
}

template <class K>
FullHull build_full_hull(std::span<const Point> points) {
  if (points.empty()) throw ContractError("hull of an empty point set");
  auto [upper, lower] = build_chains<K>(points);
  return {split_upper(upper), split_upper(lower)};
}

}  // namespace ioch

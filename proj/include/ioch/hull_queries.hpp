#pragma once

// The five hull queries over a hull given as an upper chain U and the upper
// chain Lf of the y-negated points (the lower hull, flipped). Both chains are
// any SearchableChain, so vector and tree stores share this code.

#include <algorithm>
#include <optional>
#include <utility>

#include "ioch/hull_core.hpp"
#include "ioch/outcome.hpp"
#include "ioch/predicates.hpp"

namespace ioch {

struct Direction {
  double dx = 0.0;
  double dy = 0.0;
};

/// Validated direction: finite and not the zero vector.
Direction make_direction(double dx, double dy);

namespace detail {

/// First i in [lo, hi) with !f(i); f must be monotone (true then false).
template <class F>
std::size_t first_false(std::size_t lo, std::size_t hi, F f) {
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (f(mid))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

/// A chain read right to left with x negated.
template <class C>
struct MirrorChain {
  const C& c;
  std::size_t size() const { return c.size(); }
  Point at(std::size_t i) const { return flip_x(c.at(c.size() - 1 - i)); }
};

/// lies_right with a non-strict second case (u on l counts). Only used to pick
/// a direction on edges that l does not cross.
template <class K>
bool lies_right_loose(const Line& l, const Point& u, const Point& v) {
  const int cmp = slope_compare<K>(l.first(), l.second(), u, v);
  const bool above = side_of<K>(l, u) > 0;
  return (cmp < 0 && above) || (cmp > 0 && !above);
}

/// Where a non-vertical line enters the region under a chain, scanning left
/// to right. Start: the chain's first vertex is on or above l. Edge: the
/// crossing lies on segment (a, b) (a == b for a vertex on l).
struct Crossing {
  enum Kind { None, Start, Edge } kind = None;
  Point a, b;
};

/// Index of a vertex maximizing the height above a non-vertical line.
template <class K, class V>
std::size_t peak_index(const V& chain, const Line& l) {
  const Point p = l.first(), q = l.second();
  return first_false(0, chain.size() - 1,
                     [&](std::size_t i) { return K::slope_less(p, q, chain.at(i), chain.at(i + 1)); });
}

template <class K, class V>
Crossing chain_entry(const V& chain, const Line& l) {
  const std::size_t peak = peak_index<K>(chain, l);
  if (side_of<K>(l, chain.at(0)) >= 0) return {Crossing::Start, {}, {}};
  const Point top = chain.at(peak);
  const int s = side_of<K>(l, top);
  if (s < 0) return {};
  if (s == 0) return {Crossing::Edge, top, top};
  // Binary descent over the rising part, edges [0, peak).
  std::size_t lo = 0, hi = peak;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const Point u = chain.at(mid), v = chain.at(mid + 1);
    const bool au = side_of<K>(l, u) > 0, av = side_of<K>(l, v) > 0;
    if (au != av) return {Crossing::Edge, u, v};
    if (lies_right_loose<K>(l, u, v))
      hi = mid;
    else
      lo = mid + 1;
  }
  throw ContractError("line crossing search lost the crossing edge");
}

inline Crossing unflip_x(Crossing c) {
  c.a = flip_x(c.a);
  c.b = flip_x(c.b);
  return c;
}

inline Crossing unflip_y(Crossing c) {
  c.a = flip_y(c.a);
  c.b = flip_y(c.b);
  return c;
}

/// Vertex of the chain at abscissa x, or the edge spanning x. x must lie in
/// the chain's range.
template <class C>
std::pair<Point, Point> edge_at_x(const C& chain, double x) {
  const std::size_t r = chain.lower_bound_x(x);
  const Point v = chain.at(r);
  if (v.x == x) return {v, v};
  return {chain.at(r - 1), v};
}

}  // namespace detail

/// Point where l meets segment (a, b): an endpoint on l is returned as is;
/// otherwise the segment is parametrized from its lexicographically smaller
/// end, so the result does not depend on argument order.
template <class K>
Point intersection_point(const Line& l, Point a, Point b) {
  if (xy_less(b, a)) std::swap(a, b);
  if (side_of<K>(l, a) == 0) return a;
  if (side_of<K>(l, b) == 0) return b;
  const Point p = l.first(), r = l.second();
  const double da = (r.x - p.x) * (a.y - p.y) - (r.y - p.y) * (a.x - p.x);
  const double db = (r.x - p.x) * (b.y - p.y) - (r.y - p.y) * (b.x - p.x);
  double t = da / (da - db);
  t = std::clamp(t, 0.0, 1.0);
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

/// q in the closed region under the chain (within its x-range).
template <class K, SearchableChain C>
bool chain_under(const C& chain, const Point& q) {
  const std::size_t n = chain.size();
  if (n == 0) return false;
  const std::size_t r = chain.lower_bound_x(q.x);
  if (r == n) return false;
  const Point v = chain.at(r);
  if (v.x == q.x) return q.y <= v.y;
  if (r == 0) return false;
  return K::side(chain.at(r - 1), v, q) <= 0;
}

/// Closed containment.
template <class K, SearchableChain C>
bool hull_contains(const C& upper, const C& lower_flipped, const Point& q) {
  return chain_under<K>(upper, q) && chain_under<K>(lower_flipped, flip_y(q));
}

/// A vertex maximizing dot(p, d).
template <class K, SearchableChain C>
Outcome<Point> hull_extreme_point(const C& upper, const C& lower_flipped, const Direction& d) {
  if (upper.size() == 0) return ErrorCode::EmptyHull;
  if (d.dy == 0.0) return d.dx > 0 ? upper.at(upper.size() - 1) : upper.at(0);
  const bool up = d.dy > 0;
  const C& chain = up ? upper : lower_flipped;
  const double dy = up ? d.dy : -d.dy;
  // An edge e increases dot(., d) iff slope((0,0), (dy, -dx)) < slope(e).
  const Point o{0, 0}, t{dy, -d.dx};
  const std::size_t i = detail::first_false(
      0, chain.size() - 1, [&](std::size_t j) { return K::slope_less(o, t, chain.at(j), chain.at(j + 1)); });
  const Point v = chain.at(i);
  return up ? v : flip_y(v);
}

/// Whether l meets the closed hull.
template <class K, SearchableChain C>
bool hull_line_hits(const C& upper, const C& lower_flipped, const Line& l) {
  if (upper.size() == 0) return false;
  if (l.vertical()) return upper.at(0).x <= l.p.x && l.p.x <= upper.at(upper.size() - 1).x;
  const Line lf = flip_y(l);
  return side_of<K>(l, upper.at(detail::peak_index<K>(upper, l))) >= 0 &&
         side_of<K>(lf, lower_flipped.at(detail::peak_index<K>(lower_flipped, lf))) >= 0;
}

/// q's clockwise predecessor and successor on the boundary of hull ∪ {q}:
/// the two vertices whose lines through q support the hull.
template <class K, SearchableChain C>
Outcome<std::pair<Point, Point>> hull_tangents(const C& upper, const C& lower_flipped, const Point& q) {
  const std::size_t nu = upper.size(), nl = lower_flipped.size();
  if (nu == 0) return ErrorCode::EmptyHull;
  const auto su = locate_splice<K>(upper, q);
  const auto sl = locate_splice<K>(lower_flipped, flip_y(q));
  if (!su && !sl) return ErrorCode::PointInsideHull;
  auto lower_at = [&](std::size_t i) { return flip_y(lower_flipped.at(i)); };
  if (su) {
    const Point prev = su->keep_left > 0 ? upper.at(su->keep_left - 1)
                       : sl                ? lower_at(sl->keep_right)
                                           : lower_at(0);
    const Point next = su->keep_right < nu ? upper.at(su->keep_right)
                       : sl                ? lower_at(sl->keep_left - 1)
                                           : lower_at(nl - 1);
    return std::pair{prev, next};
  }
  const Point prev = sl->keep_right < nl ? lower_at(sl->keep_right) : upper.at(nu - 1);
  const Point next = sl->keep_left > 0 ? lower_at(sl->keep_left - 1) : upper.at(0);
  return std::pair{prev, next};
}

namespace detail {

/// Joins per-chain crossings on one side of the hull. `top`/`bottom` are the
/// hull's extreme vertices on that side (the ends of its vertical wall).
template <class K>
std::optional<Point> join_side(const Line& l, const Crossing& up, const Crossing& low, const Point& top,
                               const Point& bottom) {
  if (up.kind == Crossing::None || low.kind == Crossing::None) return std::nullopt;
  if (up.kind == Crossing::Start && low.kind == Crossing::Start) return intersection_point<K>(l, bottom, top);
  const Crossing& c = up.kind == Crossing::Edge ? up : low;
  return intersection_point<K>(l, c.a, c.b);
}

/// Crossings for the four (chain, side) pairs, mapped back to original
/// coordinates, for a non-vertical l.
template <class K, class V>
std::pair<Crossing, Crossing> chain_crossings(const V& chain, const Line& l) {
  return {chain_entry<K>(chain, l), unflip_x(chain_entry<K>(MirrorChain<V>{chain}, flip_x(l)))};
}

}  // namespace detail

/// End points of l ∩ hull, ordered along l (left to right, or bottom to top
/// for a vertical l). A tangent line yields the touching vertex twice.
template <class K, SearchableChain C>
std::optional<std::pair<Point, Point>> hull_line_intersect(const C& upper, const C& lower_flipped, const Line& l) {
  const std::size_t nu = upper.size(), nl = lower_flipped.size();
  if (nu == 0) return std::nullopt;
  if (l.vertical()) {
    const double x = l.p.x;
    if (x < upper.at(0).x || x > upper.at(nu - 1).x) return std::nullopt;
    const auto [ua, ub] = detail::edge_at_x(upper, x);
    const auto [la, lb] = detail::edge_at_x(lower_flipped, x);
    return std::pair{intersection_point<K>(l, flip_y(la), flip_y(lb)), intersection_point<K>(l, ua, ub)};
  }
  const auto [u_in, u_out] = detail::chain_crossings<K>(upper, l);
  auto [l_in, l_out] = detail::chain_crossings<K>(lower_flipped, flip_y(l));
  l_in = detail::unflip_y(l_in);
  l_out = detail::unflip_y(l_out);
  const auto left = detail::join_side<K>(l, u_in, l_in, upper.at(0), flip_y(lower_flipped.at(0)));
  const auto right = detail::join_side<K>(l, u_out, l_out, upper.at(nu - 1), flip_y(lower_flipped.at(nl - 1)));
  if (!left || !right) return std::nullopt;
  return std::pair{*left, *right};
}

}  // namespace ioch

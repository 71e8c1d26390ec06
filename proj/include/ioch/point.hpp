#pragma once

#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>

namespace ioch {

/// Raised when a caller breaks an operation's precondition.
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline bool is_finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Builds a point, rejecting NaN and infinite coordinates.
inline Point make_point(double x, double y) {
  Point p{x, y};
  if (!is_finite(p)) throw ContractError("point coordinates must be finite");
  return p;
}

/// Lexicographic (x, then y) order used for sorting input and keying stores.
inline bool xy_less(const Point& a, const Point& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

/// y-negation: maps lower-hull problems onto upper-hull code.
inline Point flip_y(const Point& p) { return {p.x, -p.y}; }

/// x-negation: maps right-to-left scans onto left-to-right code.
inline Point flip_x(const Point& p) { return {-p.x, p.y}; }

/// A line through two distinct points. Predicates orient it so that the
/// lexicographically smaller point comes first.
struct Line {
  Point p;
  Point q;

  Line() = default;
  Line(Point a, Point b) : p(a), q(b) {
    if (a == b) throw ContractError("line needs two distinct points");
  }

  Point first() const { return xy_less(p, q) ? p : q; }
  Point second() const { return xy_less(p, q) ? q : p; }
  bool vertical() const { return p.x == q.x; }
};

inline Line flip_y(const Line& l) { return Line(flip_y(l.p), flip_y(l.q)); }
inline Line flip_x(const Line& l) { return Line(flip_x(l.p), flip_x(l.q)); }

}  // namespace ioch

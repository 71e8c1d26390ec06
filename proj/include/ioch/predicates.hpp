#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ioch/outcome.hpp"
#include "ioch/point.hpp"

namespace ioch {

enum class KernelKind { Naive, Quadratic, Exact };

std::string_view to_string(KernelKind k);
std::optional<KernelKind> parse_kernel(std::string_view name);

namespace detail {

/// Exact sign of (p1 - p0)(q1 - q0) - (r1 - r0)(s1 - s0) over the binary
/// values of the inputs. Slow path; callers filter first.
int exact_diffprod_sign(double p1, double p0, double q1, double q0, double r1, double r0, double s1,
                        double s0);

/// Floating-point filter for the same expression. The error bound is the
/// classic orient2d bound, valid because the expression has the same shape.
inline int filtered_diffprod_sign(double p1, double p0, double q1, double q0, double r1, double r0,
                                  double s1, double s0) {
  constexpr double eps = 0x1p-53;
  constexpr double errbound = (3.0 + 16.0 * eps) * eps;
  const double left = (p1 - p0) * (q1 - q0);
  const double right = (r1 - r0) * (s1 - s0);
  const double det = left - right;
  const double detsum = std::abs(left) + std::abs(right);
  // Tiny magnitudes can underflow and void the relative bound.
  if (detsum > 0x1p-900 && std::isfinite(detsum)) {
    const double bound = errbound * detsum;
    if (det > bound) return 1;
    if (-det > bound) return -1;
  }
  return exact_diffprod_sign(p1, p0, q1, q0, r1, r0, s1, s0);
}

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

/// +1 / -1 multiplier that orients segment (a, b) left to right (upwards
/// when vertical). Exact: the sign of a float difference is always correct.
inline int orientation_flip(const Point& a, const Point& b) {
  return (b.x < a.x || (b.x == a.x && b.y < a.y)) ? -1 : 1;
}

}  // namespace detail

// Kernels expose unchecked static predicates used inside the hull algorithms.
// `side(a, b, c)` assumes a is lexicographically before b and returns +1 when c
// is strictly above line(a, b), 0 when on it, -1 when strictly below.
// `slope_less` compares slopes of the two segments, treating a vertical
// segment as having slope +infinity.

/// Cross-multiplied ("quadratic") formulas in plain double arithmetic.
struct QuadraticKernel {
  static constexpr KernelKind kind = KernelKind::Quadratic;

  static int side(const Point& a, const Point& b, const Point& c) {
    return detail::sign_of((b.x - a.x) * (c.y - b.y) - (c.x - b.x) * (b.y - a.y));
  }

  static bool slope_less(const Point& a, const Point& b, const Point& c, const Point& d) {
    double dx1 = b.x - a.x, dy1 = b.y - a.y;
    double dx2 = d.x - c.x, dy2 = d.y - c.y;
    if (dx1 < 0.0 || (dx1 == 0.0 && dy1 < 0.0)) dx1 = -dx1, dy1 = -dy1;
    if (dx2 < 0.0 || (dx2 == 0.0 && dy2 < 0.0)) dx2 = -dx2, dy2 = -dy2;
    return dy1 * dx2 < dy2 * dx1;
  }
};

/// Error-free evaluation: a rigorous float filter with an arbitrary-precision
/// rational fallback over the exact binary values of the inputs.
struct ExactKernel {
  static constexpr KernelKind kind = KernelKind::Exact;

  static int side(const Point& a, const Point& b, const Point& c) {
    return detail::filtered_diffprod_sign(b.x, a.x, c.y, b.y, c.x, b.x, b.y, a.y);
  }

  static bool slope_less(const Point& a, const Point& b, const Point& c, const Point& d) {
    // slope(ab) < slope(cd)  <=>  dy2*dx1 - dy1*dx2 > 0 with both segments
    // oriented left to right.
    const int flip = detail::orientation_flip(a, b) * detail::orientation_flip(c, d);
    return flip * detail::filtered_diffprod_sign(d.y, c.y, b.x, a.x, b.y, a.y, d.x, c.x) > 0;
  }
};

/// Slope-intercept evaluation in doubles. Kept for the robustness audit.
struct NaiveKernel {
  static constexpr KernelKind kind = KernelKind::Naive;

  static int side(const Point& a, const Point& b, const Point& c) {
    if (a.x == b.x) return QuadraticKernel::side(a, b, c);
    const double slope = (b.y - a.y) / (b.x - a.x);
    const double intercept = a.y - slope * a.x;
    return detail::sign_of(c.y - (slope * c.x + intercept));
  }

  static bool slope_less(const Point& a, const Point& b, const Point& c, const Point& d) {
    return (b.y - a.y) / (b.x - a.x) < (d.y - c.y) / (d.x - c.x);
  }
};

/// -1, 0, +1 as slope(ab) is less than, equal to, or greater than slope(cd).
template <class K>
int slope_compare(const Point& a, const Point& b, const Point& c, const Point& d) {
  if (K::slope_less(a, b, c, d)) return -1;
  if (K::slope_less(c, d, a, b)) return 1;
  return 0;
}

/// Side of c relative to l, with l oriented left to right.
template <class K>
int side_of(const Line& l, const Point& c) {
  return K::side(l.first(), l.second(), c);
}

/// Strict version of "u lies right of l ∩ line(u, v)". Caller guarantees the
/// lines are not parallel.
template <class K>
bool lies_right_unchecked(const Line& l, const Point& u, const Point& v) {
  if (u.x == v.x) return false;  // the intersection has abscissa u.x
  const int cmp = slope_compare<K>(l.first(), l.second(), u, v);
  const int s = side_of<K>(l, u);
  return (cmp < 0 && s > 0) || (cmp > 0 && s < 0);
}

/// Invokes f with the kernel type selected at runtime.
template <class F>
decltype(auto) with_kernel(KernelKind k, F&& f) {
  switch (k) {
    case KernelKind::Naive: return f(NaiveKernel{});
    case KernelKind::Quadratic: return f(QuadraticKernel{});
    case KernelKind::Exact: break;
  }
  return f(ExactKernel{});
}

// Checked predicate surface.

/// slope(line(a, b)) < slope(line(c, d)).
Outcome<bool> slope_less(const Point& a, const Point& b, const Point& c, const Point& d, KernelKind k);

/// c lies strictly above l (strictly left of l when l is vertical).
bool above_line(const Line& l, const Point& c, KernelKind k);

/// u lies strictly right of the intersection l ∩ line(u, v).
Outcome<bool> lies_right(const Line& l, const Point& u, const Point& v, KernelKind k);

struct DisagreementReport {
  std::size_t evaluated = 0;
  std::size_t disagreements = 0;
  std::string first_witness;  // empty when there is no disagreement
};

/// Compares every predicate of kernel `k` against the exact kernel over a
/// deterministic sample of tuples drawn from `points`.
DisagreementReport audit_kernels(std::span<const Point> points, KernelKind k);

}  // namespace ioch

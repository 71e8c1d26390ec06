#include "ioch/predicates.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "ioch/random.hpp"

namespace ioch {

std::string_view to_string(KernelKind k) {
  switch (k) {
    case KernelKind::Naive: return "naive";
    case KernelKind::Quadratic: return "quadratic";
    case KernelKind::Exact: return "exact";
  }
  return "unknown";
}

std::optional<KernelKind> parse_kernel(std::string_view name) {
  if (name == "naive") return KernelKind::Naive;
  if (name == "quadratic") return KernelKind::Quadratic;
  if (name == "exact") return KernelKind::Exact;
  return std::nullopt;
}

namespace detail {

int exact_diffprod_sign(double p1, double p0, double q1, double q0, double r1, double r0, double s1,
                        double s0) {
  // mpq_class(double) is exact: every finite double is a dyadic rational.
  const mpq_class left = (mpq_class(p1) - mpq_class(p0)) * (mpq_class(q1) - mpq_class(q0));
  const mpq_class right = (mpq_class(r1) - mpq_class(r0)) * (mpq_class(s1) - mpq_class(s0));
  return sgn(left - right);
}

}  // namespace detail

Outcome<bool> slope_less(const Point& a, const Point& b, const Point& c, const Point& d, KernelKind k) {
  if (a == b || c == d) return ErrorCode::DegenerateSegment;
  if (k == KernelKind::Naive && (a.x == b.x || c.x == d.x)) return ErrorCode::VerticalSegment;
  return with_kernel(k, [&](auto kernel) { return decltype(kernel)::slope_less(a, b, c, d); });
}

bool above_line(const Line& l, const Point& c, KernelKind k) {
  return with_kernel(k, [&](auto kernel) { return side_of<decltype(kernel)>(l, c) > 0; });
}

Outcome<bool> lies_right(const Line& l, const Point& u, const Point& v, KernelKind k) {
  if (u == v) return ErrorCode::DegenerateSegment;
  if (k == KernelKind::Naive && (l.vertical() || u.x == v.x)) return ErrorCode::VerticalSegment;
  return with_kernel(k, [&](auto kernel) -> Outcome<bool> {
    using K = decltype(kernel);
    if (slope_compare<K>(l.first(), l.second(), u, v) == 0) return ErrorCode::ParallelLines;
    return lies_right_unchecked<K>(l, u, v);
  });
}

namespace {

std::string describe(std::string_view what, std::initializer_list<Point> pts) {
  std::ostringstream os;
  os.precision(17);
  os << what;
  for (const Point& p : pts) os << " (" << p.x << ", " << p.y << ")";
  return os.str();
}

}  // namespace

DisagreementReport audit_kernels(std::span<const Point> points, KernelKind k) {
  DisagreementReport report;
  if (points.size() < 4) return report;

  std::vector<Point> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), xy_less);

  auto check = [&](const Point& a, const Point& b, const Point& c, const Point& d) {
    const auto slope = slope_less(a, b, c, d, k);
    const auto slope_ref = slope_less(a, b, c, d, KernelKind::Exact);
    if (slope && slope_ref) {
      ++report.evaluated;
      if (*slope != *slope_ref && report.disagreements++ == 0)
        report.first_witness = describe("slope_less", {a, b, c, d});
    }
    if (a != c) {
      const Line l(a, c);
      ++report.evaluated;
      if (above_line(l, b, k) != above_line(l, b, KernelKind::Exact) && report.disagreements++ == 0)
        report.first_witness = describe("above_line", {a, c, b});
    }
    if (a != b) {
      const Line l(a, b);
      const auto lr = lies_right(l, c, d, k);
      const auto lr_ref = lies_right(l, c, d, KernelKind::Exact);
      if (lr && lr_ref) {
        ++report.evaluated;
        if (*lr != *lr_ref && report.disagreements++ == 0)
          report.first_witness = describe("lies_right", {a, b, c, d});
      }
    }
  };

  // Neighbouring points in x order give the near-degenerate tuples hull
  // algorithms actually evaluate; random tuples cover the rest.
  for (std::size_t i = 0; i + 3 < sorted.size(); ++i) {
    check(sorted[i], sorted[i + 1], sorted[i + 1], sorted[i + 2]);
    check(sorted[i], sorted[i + 1], sorted[i + 2], sorted[i + 3]);
  }

  SplitMix64 rng(0x5eed'a0d1'7000'0001ULL);
  const std::size_t n = sorted.size();
  for (std::size_t t = 0; t < n; ++t)
    check(sorted[rng.below(n)], sorted[rng.below(n)], sorted[rng.below(n)], sorted[rng.below(n)]);
  return report;
}

}  // namespace ioch

#include "ioch/hull_core.hpp"

#include "ioch/predicates.hpp"

namespace ioch {

std::size_t apex_index(std::span<const Point> chain) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (chain[i].y > chain[best].y) best = i;
  return best;
}

namespace {

void check_chain(std::span<const Point> v, const char* what) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (!(v[i].x < v[i + 1].x)) throw ContractError(std::string(what) + ": x not strictly increasing");
    if (i + 2 < v.size() && !ExactKernel::slope_less(v[i + 1], v[i + 2], v[i], v[i + 1]))
      throw ContractError(std::string(what) + ": slopes not strictly decreasing");
  }
}

}  // namespace

void validate(const QuarterHull& h) {
  const auto& v = h.vertices;
  if (h.orientation == Orientation::Gamma) {
    check_chain(v, "gamma");
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      if (!(v[i].y < v[i + 1].y)) throw ContractError("gamma: y not strictly increasing");
  } else {
    check_chain(v, "nabla");
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (v[i].y < v[i + 1].y) throw ContractError("nabla: y increases");
      if (i > 0 && v[i].y == v[i + 1].y) throw ContractError("nabla: flat edge after the apex");
    }
  }
}

std::vector<Point> UpperHull::chain() const {
  std::vector<Point> out = gamma.vertices;
  if (!nabla.vertices.empty()) out.insert(out.end(), nabla.vertices.begin() + 1, nabla.vertices.end());
  return out;
}

UpperHull compose_upper(QuarterHull gamma, QuarterHull nabla) {
  if (gamma.empty() || nabla.empty()) throw ContractError("compose_upper needs non-empty quarters");
  if (!(gamma.vertices.back() == nabla.vertices.front())) throw ContractError("compose_upper: apex mismatch");
  gamma.orientation = Orientation::Gamma;
  nabla.orientation = Orientation::Nabla;
  validate(gamma);
  validate(nabla);
  UpperHull u{std::move(gamma), std::move(nabla), {}};
  u.apex = u.gamma.vertices.back();
  check_chain(u.chain(), "upper hull");
  return u;
}

UpperHull split_upper(std::span<const Point> chain) {
  if (chain.empty()) throw ContractError("split_upper on an empty chain");
  const std::size_t a = apex_index(chain);
  UpperHull u;
  u.gamma = {std::vector<Point>(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(a) + 1), Orientation::Gamma};
  u.nabla = {std::vector<Point>(chain.begin() + static_cast<std::ptrdiff_t>(a), chain.end()), Orientation::Nabla};
  u.apex = chain[a];
  return u;
}

std::vector<Point> hull_boundary(std::span<const Point> upper, std::span<const Point> lower_flipped) {
  std::vector<Point> out(upper.begin(), upper.end());
  if (lower_flipped.empty()) return out;
  std::size_t hi = lower_flipped.size();
  std::size_t lo = 0;
  if (!out.empty() && flip_y(lower_flipped[hi - 1]) == out.back()) --hi;
  if (!out.empty() && hi > 0 && flip_y(lower_flipped[0]) == out.front()) lo = 1;
  for (std::size_t i = hi; i > lo; --i) out.push_back(flip_y(lower_flipped[i - 1]));
  return out;
}

}  // namespace ioch

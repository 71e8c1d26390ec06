#include "ioch/logmethod.hpp"

#include <queue>

namespace ioch {

std::vector<Point> k_way_merge(std::span<const std::span<const Point>> runs) {
  std::size_t total = 0;
  for (const auto& r : runs) total += r.size();
  std::vector<Point> out;
  out.reserve(total);

  struct Cursor {
    Point p;
    std::size_t run;
    std::size_t pos;
  };
  // Min-heap on (point, run index); the run index makes ties stable.
  auto later = [](const Cursor& a, const Cursor& b) {
    if (xy_less(b.p, a.p)) return true;
    if (xy_less(a.p, b.p)) return false;
    return a.run > b.run;
  };
  std::priority_queue<Cursor, std::vector<Cursor>, decltype(later)> heap(later);
  for (std::size_t r = 0; r < runs.size(); ++r)
    if (!runs[r].empty()) heap.push({runs[r][0], r, 0});
  while (!heap.empty()) {
    Cursor c = heap.top();
    heap.pop();
    out.push_back(c.p);
    if (++c.pos < runs[c.run].size()) {
      c.p = runs[c.run][c.pos];
      heap.push(c);
    }
  }
  return out;
}

}  // namespace ioch

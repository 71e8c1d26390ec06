#pragma once

// Logarithmic method: a small base store plus power-of-two buckets, each
// holding the hull of the points merged into it. Containment and line
// crossing are answered over all buckets at once.

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ioch/hull_queries.hpp"
#include "ioch/stores.hpp"

namespace ioch {

/// Stable merge of (x, y)-sorted runs; equal points drain from the lowest
/// run index first.
std::vector<Point> k_way_merge(std::span<const std::span<const Point>> runs);

/// Linear and Btree merge by insertion count (sizes 0 or 2^i); Hull merges
/// by stored hull size and places a hull of size h at level floor(log2 h).
enum class LogVariant { Linear, Btree, Hull };

enum class ContainsPath { PairTest, HullOfTangents };

struct BucketInfo {
  int level = 0;
  std::size_t virtual_size = 0;
  std::size_t stored = 0;  // vertices kept (upper + lower chain)
};

namespace detail {

/// Leftmost vertex among chain starts, the higher one on ties.
template <class V>
Point combined_first(const std::vector<V>& chains) {
  Point best = chains.front().at(0);
  for (const V& c : chains) {
    const Point p = c.at(0);
    if (p.x < best.x || (p.x == best.x && p.y > best.y)) best = p;
  }
  return best;
}

/// Upper common tangent of x-separated upper chains L = left[0, cut) and
/// R = right[from, n). Collinear ties go to the outermost vertices.
template <class K, class V>
std::pair<Point, Point> bridge(const V& left, std::size_t cut, const V& right, std::size_t from) {
  std::size_t i = cut - 1, j = from;
  const std::size_t nr = right.size();
  for (bool moved = true; moved;) {
    moved = false;
    while (i > 0 && K::side(left.at(i), right.at(j), left.at(i - 1)) >= 0) --i, moved = true;
    while (j + 1 < nr && K::side(left.at(i), right.at(j), right.at(j + 1)) >= 0) ++j, moved = true;
  }
  return {left.at(i), right.at(j)};
}

/// Whether (a, b) is an edge of the upper hull of all chains with no other
/// point on it beyond its ends.
template <class K, class V>
bool is_union_edge(const std::vector<V>& chains, const Point& a, const Point& b) {
  const Line m(a, b);
  for (const V& c : chains) {
    const std::size_t n = c.size();
    const std::size_t p = peak_index<K>(c, m);
    const int s = side_of<K>(m, c.at(p));
    if (s > 0) return false;
    if (s < 0) continue;
    const std::size_t f = first_false(0, p, [&](std::size_t i) { return side_of<K>(m, c.at(i)) < 0; });
    const std::size_t g = first_false(p, n, [&](std::size_t i) { return side_of<K>(m, c.at(i)) >= 0; }) - 1;
    if (c.at(f).x < a.x || c.at(g).x > b.x) return false;
  }
  return true;
}

/// Left entry of a non-vertical l into the region under the upper hull of
/// several chains. The crossed edge is either some chain's own crossed edge
/// or the bridge between chain i left of chain j's first vertex on or above
/// l and chain j from that vertex on; candidates are checked as hull edges.
template <class K, class V>
Crossing combined_entry(const std::vector<V>& chains, const Line& l) {
  if (side_of<K>(l, combined_first(chains)) >= 0) return {Crossing::Start, {}, {}};
  std::vector<std::pair<Point, Point>> candidates;
  std::vector<std::optional<std::size_t>> first_up(chains.size());
  bool any = false;
  for (std::size_t j = 0; j < chains.size(); ++j) {
    const V& c = chains[j];
    const std::size_t p = peak_index<K>(c, l);
    if (side_of<K>(l, c.at(p)) < 0) continue;
    first_up[j] = first_false(0, p, [&](std::size_t i) { return side_of<K>(l, c.at(i)) < 0; });
    any = true;
  }
  if (!any) return {};
  for (std::size_t j = 0; j < chains.size(); ++j) {
    if (!first_up[j]) continue;
    const std::size_t fb = *first_up[j];
    const V& cj = chains[j];
    if (fb > 0) candidates.emplace_back(cj.at(fb - 1), cj.at(fb));
    const double x = cj.at(fb).x;
    for (std::size_t i = 0; i < chains.size(); ++i) {
      if (i == j) continue;
      const V& ci = chains[i];
      const std::size_t cut = first_false(0, ci.size(), [&](std::size_t k) { return ci.at(k).x < x; });
      if (cut > 0) candidates.push_back(bridge<K>(ci, cut, cj, fb));
    }
  }
  for (const auto& [a, b] : candidates) {
    if (side_of<K>(l, a) < 0 && side_of<K>(l, b) >= 0 && is_union_edge<K>(chains, a, b))
      return {Crossing::Edge, a, b};
  }
  throw ContractError("combined line crossing: no candidate edge verified");
}

/// Entry and exit crossings over all chains, in the chains' frame.
template <class K>
std::pair<Crossing, Crossing> combined_crossings(const std::vector<SpanChain>& chains, const Line& l) {
  std::vector<MirrorChain<SpanChain>> mirrored;
  mirrored.reserve(chains.size());
  for (const SpanChain& c : chains) mirrored.push_back({c});
  return {combined_entry<K>(chains, l), unflip_x(combined_entry<K>(mirrored, flip_x(l)))};
}

template <class K>
std::vector<Point> merge_hull(std::span<const std::span<const Point>> runs) {
  return graham_upper<K>(k_way_merge(runs));
}

}  // namespace detail

/// l ∩ hull of the union of several hulls, each given as upper chain and
/// flipped lower chain. Same conventions as hull_line_intersect.
template <class K>
std::optional<std::pair<Point, Point>> combined_line_intersect(const std::vector<SpanChain>& uppers,
                                                               const std::vector<SpanChain>& lowers,
                                                               const Line& l) {
  if (uppers.empty()) return std::nullopt;
  if (l.vertical()) {
    std::vector<std::span<const Point>> ru, rl;
    for (const SpanChain& c : uppers) ru.push_back(c.pts);
    for (const SpanChain& c : lowers) rl.push_back(c.pts);
    const auto u = detail::merge_hull<K>(ru), lo = detail::merge_hull<K>(rl);
    return hull_line_intersect<K>(SpanChain{u}, SpanChain{lo}, l);
  }
  const auto [u_in, u_out] = detail::combined_crossings<K>(uppers, l);
  auto [l_in, l_out] = detail::combined_crossings<K>(lowers, flip_y(l));
  l_in = detail::unflip_y(l_in);
  l_out = detail::unflip_y(l_out);

  std::vector<detail::MirrorChain<SpanChain>> mu, ml;
  for (const SpanChain& c : uppers) mu.push_back({c});
  for (const SpanChain& c : lowers) ml.push_back({c});
  const Point top_left = detail::combined_first(uppers);
  const Point bottom_left = flip_y(detail::combined_first(lowers));
  const Point top_right = flip_x(detail::combined_first(mu));
  const Point bottom_right = flip_y(flip_x(detail::combined_first(ml)));

  const auto left = detail::join_side<K>(l, u_in, l_in, top_left, bottom_left);
  const auto right = detail::join_side<K>(l, u_out, l_out, top_right, bottom_right);
  if (!left || !right) return std::nullopt;
  return std::pair{*left, *right};
}

template <class K, class BaseSeq>
class LogStructure final : public HullStructure {
 public:
  struct Bucket {
    std::vector<Point> upper;
    std::vector<Point> lower;  // flipped
    std::size_t virtual_size = 0;
  };

  LogStructure(StructureKind kind, LogVariant variant, const StoreOptions& opts)
      : kind_(kind), variant_(variant), capacity_(opts.base_capacity), base_(opts) {
    if (capacity_ < 2 || !std::has_single_bit(capacity_))
      throw ContractError("base capacity must be a power of two >= 2");
    base_level_ = std::bit_width(capacity_) - 2;
    peak_ = memory_bytes();
  }

  void insert(const Point& q) override {
    if (!is_finite(q)) throw ContractError("point coordinates must be finite");
    base_.insert(q);
    if (variant_ == LogVariant::Hull) {
      if (base_.hull_size() >= capacity_) merge_by_hull();
    } else if (++base_count_ == capacity_) {
      merge_by_count();
    }
    peak_ = std::max(peak_, memory_bytes());
  }

  std::size_t hull_size() const override {
    const auto u = upper_chain(), l = lower_chain_flipped();
    if (u.empty()) return 0;
    return boundary_size(u.size(), l.size(), u.front(), u.back(), l.front(), l.back());
  }
  std::vector<Point> vertices() const override { return hull_boundary(upper_chain(), lower_chain_flipped()); }
  std::vector<Point> upper_chain() const override { return merged_chain(true); }
  std::vector<Point> lower_chain_flipped() const override { return merged_chain(false); }

  std::size_t memory_bytes() const override {
    std::size_t total = kStoreHeaderBytes + base_.memory_bytes();
    for (const auto& b : levels_)
      if (b) total += (b->upper.size() + b->lower.size()) * sizeof(Point);
    return total;
  }
  std::size_t peak_bytes() const override { return peak_; }

  bool contains(const Point& q) const override { return contains_combined(q, ContainsPath::HullOfTangents); }

  /// Per hull half: inside if some bucket's region holds q, else decided
  /// from the tangent vertices of all buckets.
  bool contains_combined(const Point& q, ContainsPath path) const {
    if (base_.empty() && occupied_ == 0) return false;
    return frame_contains(true, q, path) && frame_contains(false, flip_y(q), path);
  }

  Outcome<Point> extreme_point(const Direction& d) const override {
    std::vector<Point> cands;
    for_each_pair([&](const auto& u, const auto& l) {
      if (const auto p = hull_extreme_point<K>(u, l, d)) cands.push_back(*p);
    });
    if (cands.empty()) return ErrorCode::EmptyHull;
    const auto [u, l] = build_chains<K>(cands);
    return hull_extreme_point<K>(SpanChain{u}, SpanChain{l}, d);
  }

  bool line_hits_hull(const Line& l) const override {
    bool hit = false;
    for_each_pair([&](const auto& u, const auto& lo) { hit = hit || hull_line_hits<K>(u, lo, l); });
    return hit;
  }

  Outcome<std::pair<Point, Point>> tangents_from_point(const Point& q) const override {
    std::vector<Point> cands;
    bool inside = false, any = false;
    for_each_pair([&](const auto& u, const auto& l) {
      any = true;
      const auto t = hull_tangents<K>(u, l, q);
      if (!t) {
        inside = true;
        return;
      }
      cands.push_back(t->first);
      cands.push_back(t->second);
    });
    if (!any) return ErrorCode::EmptyHull;
    if (inside) return ErrorCode::PointInsideHull;
    const auto [u, l] = build_chains<K>(cands);
    return hull_tangents<K>(SpanChain{u}, SpanChain{l}, q);
  }

  std::optional<std::pair<Point, Point>> line_intersect(const Line& l) const override {
    const std::vector<Point> bu = base_.upper().to_vector(), bl = base_.lower().to_vector();
    std::vector<SpanChain> ups, lows;
    if (!bu.empty()) {
      ups.push_back({bu});
      lows.push_back({bl});
    }
    for (const auto& b : levels_) {
      if (!b) continue;
      ups.push_back({b->upper});
      lows.push_back({b->lower});
    }
    return combined_line_intersect<K>(ups, lows, l);
  }

  StructureKind kind() const override { return kind_; }
  KernelKind kernel() const override { return K::kind; }

  /// Level of a merged hull with h vertices: 2^k <= h < 2^(k+1).
  static std::size_t hull_level(std::size_t h) { return static_cast<std::size_t>(std::bit_width(h) - 1); }

  LogVariant variant() const { return variant_; }
  /// Level just below the first bucket (Linear/Btree variants).
  int base_level() const { return base_level_; }
  /// Insertions since the last merge (Linear/Btree) or base hull size (Hull).
  std::size_t base_count() const { return variant_ == LogVariant::Hull ? base_.hull_size() : base_count_; }
  std::size_t merge_count() const { return merges_; }
  std::vector<BucketInfo> buckets() const {
    std::vector<BucketInfo> out;
    for (std::size_t i = 0; i < levels_.size(); ++i)
      if (levels_[i])
        out.push_back({static_cast<int>(i), levels_[i]->virtual_size, levels_[i]->upper.size() + levels_[i]->lower.size()});
    return out;
  }

 private:
  template <class F>
  void for_each_pair(F&& f) const {
    if (!base_.empty()) f(base_.upper(), base_.lower());
    for (const auto& b : levels_)
      if (b) f(SpanChain{b->upper}, SpanChain{b->lower});
  }

  bool frame_contains(bool upper, const Point& q, ContainsPath path) const {
    // At most one tangent pair per level plus the base.
    std::array<Point, 66> us, vs;
    std::size_t nu = 0, nv = 0;
    bool inside = false;
    auto visit = [&](const auto& chain) {
      const std::size_t n = chain.size();
      if (inside || n == 0) return;
      const auto s = locate_splice<K>(chain, q);
      if (!s) {
        inside = true;
        return;
      }
      if (s->keep_left > 0) us[nu++] = chain.at(s->keep_left - 1);
      if (s->keep_right < n) vs[nv++] = chain.at(s->keep_right);
    };
    if (upper)
      visit(base_.upper());
    else
      visit(base_.lower());
    for (const auto& b : levels_)
      if (b) visit(SpanChain{upper ? b->upper : b->lower});
    if (inside) return true;
    if (nu == 0 || nv == 0) return false;
    if (path == ContainsPath::PairTest) {
      for (std::size_t i = 0; i < nu; ++i)
        for (std::size_t j = 0; j < nv; ++j)
          if (K::side(us[i], vs[j], q) <= 0) return true;
      return false;
    }
    std::array<Point, 132> pts;
    std::copy_n(us.begin(), nu, pts.begin());
    std::copy_n(vs.begin(), nv, pts.begin() + static_cast<std::ptrdiff_t>(nu));
    std::sort(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(nu + nv), xy_less);
    const auto hull = graham_upper<K>(std::span<const Point>(pts.data(), nu + nv));
    return chain_under<K>(SpanChain{hull}, q);
  }

  std::vector<Point> merged_chain(bool upper) const {
    const std::vector<Point> base = upper ? base_.upper().to_vector() : base_.lower().to_vector();
    std::vector<std::span<const Point>> runs{base};
    for (const auto& b : levels_)
      if (b) runs.push_back(upper ? b->upper : b->lower);
    return detail::merge_hull<K>(runs);
  }

  void note_peak(std::size_t scratch_points) {
    peak_ = std::max(peak_, memory_bytes() + scratch_points * sizeof(Point));
  }

  Bucket& level(std::size_t i) {
    if (levels_.size() <= i) levels_.resize(i + 1);
    return levels_[i].emplace();
  }
  bool is_occupied(std::size_t i) const { return i < levels_.size() && levels_[i].has_value(); }
  void clear_level(std::size_t i) {
    levels_[i].reset();
    --occupied_;
  }

  void merge_by_count() {
    std::size_t j = static_cast<std::size_t>(base_level_) + 1;
    while (is_occupied(j)) ++j;
    const std::vector<Point> bu = base_.upper().to_vector(), bl = base_.lower().to_vector();
    std::vector<std::span<const Point>> ru{bu}, rl{bl};
    for (std::size_t i = static_cast<std::size_t>(base_level_) + 1; i < j; ++i) {
      ru.push_back(levels_[i]->upper);
      rl.push_back(levels_[i]->lower);
    }
    std::vector<Point> mu = k_way_merge(ru), ml = k_way_merge(rl);
    note_peak(bu.size() + bl.size() + mu.size() + ml.size());
    std::vector<Point> hu = graham_upper<K>(mu), hl = graham_upper<K>(ml);
    for (std::size_t i = static_cast<std::size_t>(base_level_) + 1; i < j; ++i) clear_level(i);
    base_.clear();
    base_count_ = 0;
    Bucket& b = level(j);
    ++occupied_;
    b.upper.assign(hu.begin(), hu.end());
    b.lower.assign(hl.begin(), hl.end());
    b.virtual_size = std::size_t{1} << j;
    ++merges_;
  }

  void merge_by_hull() {
    std::vector<Point> hu = base_.upper().to_vector(), hl = base_.lower().to_vector();
    base_.clear();
    for (;;) {
      const std::size_t h = boundary_size(hu.size(), hl.size(), hu.front(), hu.back(), hl.front(), hl.back());
      const std::size_t k = hull_level(h);
      if (!is_occupied(k)) {
        Bucket& b = level(k);
        ++occupied_;
        b.upper.assign(hu.begin(), hu.end());
        b.lower.assign(hl.begin(), hl.end());
        b.virtual_size = h;
        break;
      }
      const std::span<const Point> ru[] = {hu, levels_[k]->upper};
      const std::span<const Point> rl[] = {hl, levels_[k]->lower};
      std::vector<Point> mu = k_way_merge(ru), ml = k_way_merge(rl);
      note_peak(hu.size() + hl.size() + mu.size() + ml.size());
      hu = graham_upper<K>(mu);
      hl = graham_upper<K>(ml);
      clear_level(k);
    }
    ++merges_;
  }

  StructureKind kind_;
  LogVariant variant_;
  std::size_t capacity_;
  int base_level_ = 0;
  ChainPair<K, BaseSeq> base_;
  std::size_t base_count_ = 0;
  std::vector<std::optional<Bucket>> levels_;
  std::size_t occupied_ = 0;
  std::size_t merges_ = 0;
  std::size_t peak_ = 0;
};

}  // namespace ioch

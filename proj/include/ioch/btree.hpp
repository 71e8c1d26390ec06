#pragma once

// B+tree used as a positional sequence of points. Points live in the leaves;
// every internal entry caches its child's element count and first/last
// point, which is enough to run rank queries and the monotone edge searches
// without visiting siblings. Contiguous range replacement is split + join
// (only the two boundary paths are touched), with an in-leaf fast path.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ioch/point.hpp"

namespace ioch {

class BtreeSequence {
 public:
  static constexpr std::size_t kDefaultNodeBytes = 1024;

  explicit BtreeSequence(std::size_t node_bytes = kDefaultNodeBytes);
  BtreeSequence(const BtreeSequence&) = delete;
  BtreeSequence& operator=(const BtreeSequence&) = delete;
  BtreeSequence(BtreeSequence&& other) noexcept;
  BtreeSequence& operator=(BtreeSequence&& other) noexcept;
  ~BtreeSequence();

  std::size_t size() const { return count_; }
  bool empty() const { return root_ == nullptr; }
  /// Number of levels (0 when empty, 1 for a single leaf).
  int depth() const { return root_ ? height_ + 1 : 0; }

  Point at(std::size_t i) const;
  std::size_t lower_bound_x(double x) const;

  /// First j in [lo, hi) with !pred(j, s_j, s_{j+1}); see SearchableChain.
  /// Descends once, deciding each child by the verdict at its last point.
  template <class Pred>
  std::size_t partition_point(std::size_t lo, std::size_t hi, Pred pred) const {
    if (lo >= hi) return hi;
    // Clamped predicate: true left of the range, false right of it and at
    // the final point (which has no successor).
    auto holds = [&](std::size_t j, const Point& a, const Point* b) {
      if (j < lo) return true;
      if (j >= hi || !b) return false;
      return static_cast<bool>(pred(j, a, *b));
    };
    const Node* n = root_;
    std::size_t base = 0;
    std::optional<Point> after;  // first point right of the current subtree
    while (!n->leaf) {
      const auto& e = n->entries;
      ends_.resize(e.size());
      std::size_t acc = base;
      for (std::size_t k = 0; k < e.size(); ++k) ends_[k] = acc += e[k].count;
      std::size_t first = 0, last = e.size();
      while (first < last) {
        const std::size_t k = first + (last - first) / 2;
        const Point* next = k + 1 < e.size() ? &e[k + 1].min : (after ? &*after : nullptr);
        if (holds(ends_[k] - 1, e[k].max, next))
          first = k + 1;
        else
          last = k;
      }
      if (first == e.size()) return hi;
      base = ends_[first] - e[first].count;
      if (first + 1 < e.size()) after = e[first + 1].min;
      n = e[first].child;
    }
    const auto& p = n->points;
    std::size_t first = 0, last = p.size();
    while (first < last) {
      const std::size_t m = first + (last - first) / 2;
      const Point* next = m + 1 < p.size() ? &p[m + 1] : (after ? &*after : nullptr);
      if (holds(base + m, p[m], next))
        first = m + 1;
      else
        last = m;
    }
    return std::min(base + first, hi);
  }

  void replace_range(std::size_t lo, std::size_t hi, const Point* q);
  void erase_range(std::size_t lo, std::size_t hi) { replace_range(lo, hi, nullptr); }
  void insert_at(std::size_t i, const Point& q) { replace_range(i, i, &q); }
  void clear();

  std::vector<Point> to_vector() const;

  std::size_t leaf_capacity() const { return leaf_max_; }
  std::size_t internal_capacity() const { return internal_max_; }
  std::size_t leaf_count() const { return leaves_; }
  std::size_t internal_count() const { return internals_; }
  /// Bytes charged per leaf / internal node: a 16-byte header plus the slot
  /// array at full capacity.
  std::size_t leaf_bytes() const { return 16 + leaf_max_ * sizeof(Point); }
  std::size_t internal_bytes() const { return 16 + internal_max_ * sizeof(Entry); }
  std::size_t memory_bytes() const { return leaves_ * leaf_bytes() + internals_ * internal_bytes(); }

  /// Throws ContractError unless all leaves share one depth, every non-root
  /// node's occupancy is within bounds and every cached entry is accurate.
  void check_invariants() const;

 private:
  struct Node;
  struct Entry {
    Node* child = nullptr;
    std::size_t count = 0;
    Point min, max;
  };
  struct Node {
    bool leaf = true;
    std::vector<Point> points;   // leaf only
    std::vector<Entry> entries;  // internal only
  };
  struct Tree {
    Node* root = nullptr;
    int height = 0;  // 0: root is a leaf
  };

  static std::size_t total(const Node* n);
  static std::size_t width(const Node* n) { return n->leaf ? n->points.size() : n->entries.size(); }
  static Entry entry_for(Node* n);

  Node* new_leaf();
  Node* new_internal();
  void free_node(Node* n);
  void destroy(Node* n);
  std::size_t min_width(const Node* n) const { return ((n->leaf ? leaf_max_ : internal_max_) + 1) / 2; }
  std::size_t max_width(const Node* n) const { return n->leaf ? leaf_max_ : internal_max_; }

  std::pair<Tree, Tree> split(Node* n, int h, std::size_t i);
  Tree join(Tree a, Tree b);
  std::vector<Node*> join_right(Node* a, int ha, Node* b, int hb);
  std::vector<Node*> join_left(Node* a, int ha, Node* b, int hb);
  std::vector<Node*> merge_siblings(Node* a, Node* b);
  Tree make_tree(std::vector<Node*> parts, int h);
  Tree from_entries(Node* reuse, std::vector<Entry> entries, int h);
  bool try_in_leaf(std::size_t lo, std::size_t hi, const Point* q);

  std::size_t leaf_max_;
  std::size_t internal_max_;
  Node* root_ = nullptr;
  int height_ = 0;
  std::size_t count_ = 0;
  std::size_t leaves_ = 0;
  std::size_t internals_ = 0;
  mutable std::vector<std::size_t> ends_;  // scratch for partition_point
  std::vector<std::pair<Node*, std::size_t>> path_;
};

}  // namespace ioch

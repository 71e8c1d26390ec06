#pragma once

// AVL tree used as a positional sequence of points. Subtree sizes give rank
// queries; a successor pointer per node lets the monotone searches read an
// edge (s_j, s_{j+1}) at any node in O(1). Range replacement is a pair of
// splits followed by a join, so removing k contiguous vertices costs
// O(log n) node operations regardless of k.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ioch/point.hpp"

namespace ioch {

class AvlSequence {
 public:
  struct Node {
    Point p;
    Node* left = nullptr;
    Node* right = nullptr;
    Node* next = nullptr;  // in-order successor
    std::uint32_t size = 1;
    std::int32_t height = 1;
  };

  AvlSequence() = default;
  AvlSequence(const AvlSequence&) = delete;
  AvlSequence& operator=(const AvlSequence&) = delete;
  AvlSequence(AvlSequence&& other) noexcept;
  AvlSequence& operator=(AvlSequence&& other) noexcept;
  ~AvlSequence();

  std::size_t size() const { return root_ ? root_->size : 0; }
  bool empty() const { return root_ == nullptr; }
  int height() const { return root_ ? root_->height : 0; }

  Point at(std::size_t i) const;
  /// First index whose point has x >= `x` (points must be x-sorted).
  std::size_t lower_bound_x(double x) const;

  /// First j in [lo, hi) with !pred(j, s_j, s_{j+1}); see SearchableChain.
  template <class Pred>
  std::size_t partition_point(std::size_t lo, std::size_t hi, Pred pred) const {
    std::size_t result = hi, base = 0;
    for (const Node* n = root_; n;) {
      const std::size_t j = base + sz(n->left);
      if (j < lo || (j < hi && pred(j, n->p, n->next->p))) {
        base = j + 1;
        n = n->right;
      } else {
        if (j < hi) result = j;
        n = n->left;
      }
    }
    return result;
  }

  /// Removes [lo, hi) and, when `q` is given, puts *q at position lo.
  void replace_range(std::size_t lo, std::size_t hi, const Point* q);
  void erase_range(std::size_t lo, std::size_t hi) { replace_range(lo, hi, nullptr); }
  void insert_at(std::size_t i, const Point& q) { replace_range(i, i, &q); }
  void clear();

  std::vector<Point> to_vector() const;
  std::size_t node_count() const { return size(); }
  static constexpr std::size_t node_bytes() { return sizeof(Node); }

  /// Throws ContractError on any broken size, height, balance or thread.
  void check_invariants() const;

 private:
  static std::size_t sz(const Node* n) { return n ? n->size : 0; }
  static int ht(const Node* n) { return n ? n->height : 0; }
  static void update(Node* n);
  static Node* rotate_left(Node* n);
  static Node* rotate_right(Node* n);
  static Node* rebalance(Node* n);
  static Node* join(Node* l, Node* mid, Node* r);
  static Node* join2(Node* l, Node* r);
  static void split(Node* t, std::size_t i, Node*& l, Node*& r);
  static void destroy(Node* n);

  Node* root_ = nullptr;
};

}  // namespace ioch

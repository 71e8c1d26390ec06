#pragma once

// Insertion-only hull structures behind one interface. Each store keeps the
// upper chain and the y-negated lower chain in a positional sequence; an
// insertion locates the splice by binary search, drops the popped range and
// puts the new point in its place.

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "ioch/avl_tree.hpp"
#include "ioch/btree.hpp"
#include "ioch/hull_core.hpp"
#include "ioch/hull_queries.hpp"
#include "ioch/predicates.hpp"

namespace ioch {

enum class StructureKind { Vector, Avl, Btree, LogLinear, LogBtree, LogHull };

std::string_view to_string(StructureKind s);
std::optional<StructureKind> parse_structure(std::string_view name);
inline constexpr StructureKind kAllStructures[] = {StructureKind::Vector,    StructureKind::Avl,
                                                   StructureKind::Btree,     StructureKind::LogLinear,
                                                   StructureKind::LogBtree,  StructureKind::LogHull};

struct StoreOptions {
  std::size_t base_capacity = 512;  // logarithmic variants; power of two >= 2
  std::size_t node_bytes = 1024;    // B-tree node size
};

/// Fixed per-structure overhead charged by memory_bytes().
inline constexpr std::size_t kStoreHeaderBytes = 64;

class HullStructure {
 public:
  virtual ~HullStructure() = default;

  /// Throws ContractError on non-finite coordinates.
  virtual void insert(const Point& q) = 0;

  virtual std::size_t hull_size() const = 0;
  /// Clockwise from the leftmost highest vertex; see hull_boundary.
  virtual std::vector<Point> vertices() const = 0;
  virtual std::vector<Point> upper_chain() const = 0;
  virtual std::vector<Point> lower_chain_flipped() const = 0;

  virtual std::size_t memory_bytes() const = 0;
  virtual std::size_t peak_bytes() const = 0;

  virtual bool contains(const Point& q) const = 0;
  virtual Outcome<Point> extreme_point(const Direction& d) const = 0;
  virtual bool line_hits_hull(const Line& l) const = 0;
  virtual Outcome<std::pair<Point, Point>> tangents_from_point(const Point& q) const = 0;
  virtual std::optional<std::pair<Point, Point>> line_intersect(const Line& l) const = 0;

  virtual StructureKind kind() const = 0;
  virtual KernelKind kernel() const = 0;
};

std::unique_ptr<HullStructure> make_structure(StructureKind s, KernelKind k, const StoreOptions& opts = {});

/// Contiguous chain with an explicit growth policy so its footprint does not
/// depend on the standard library: capacity goes to max(16, 2 * capacity).
class VectorChain {
 public:
  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  Point at(std::size_t i) const { return v_[i]; }
  std::size_t lower_bound_x(double x) const { return SpanChain{v_}.lower_bound_x(x); }
  template <class Pred>
  std::size_t partition_point(std::size_t lo, std::size_t hi, Pred pred) const {
    return SpanChain{v_}.partition_point(lo, hi, pred);
  }

  void replace_range(std::size_t lo, std::size_t hi, const Point* q) {
    if (lo > hi || hi > v_.size()) throw ContractError("replace_range out of bounds");
    const auto first = v_.begin() + static_cast<std::ptrdiff_t>(lo);
    if (q && lo < hi) {
      *first = *q;
      v_.erase(first + 1, v_.begin() + static_cast<std::ptrdiff_t>(hi));
    } else if (q) {
      if (v_.size() == cap_) grow();
      v_.insert(v_.begin() + static_cast<std::ptrdiff_t>(lo), *q);
    } else {
      v_.erase(first, v_.begin() + static_cast<std::ptrdiff_t>(hi));
    }
  }
  void erase_range(std::size_t lo, std::size_t hi) { replace_range(lo, hi, nullptr); }
  void clear() { v_.clear(); }

  std::span<const Point> span() const { return v_; }
  std::vector<Point> to_vector() const { return v_; }
  std::size_t capacity() const { return cap_; }
  std::size_t memory_bytes() const { return cap_ * sizeof(Point); }

 private:
  void grow() {
    cap_ = std::max<std::size_t>(16, 2 * cap_);
    v_.reserve(cap_);
  }

  std::vector<Point> v_;
  std::size_t cap_ = 0;
};

inline std::size_t sequence_bytes(const VectorChain& c) { return c.memory_bytes(); }
inline std::size_t sequence_bytes(const AvlSequence& c) { return c.node_count() * AvlSequence::node_bytes(); }
inline std::size_t sequence_bytes(const BtreeSequence& c) { return c.memory_bytes(); }

/// Removes the in-order range [lo, hi) by split and join.
void balanced_delete_range(AvlSequence& tree, std::size_t lo, std::size_t hi);
void balanced_delete_range(BtreeSequence& tree, std::size_t lo, std::size_t hi);

/// Number of vertices on the closed boundary formed by the two chains.
std::size_t boundary_size(std::size_t nu, std::size_t nl, const Point& u_first, const Point& u_last,
                          const Point& l_first, const Point& l_last);

template <class Seq>
Seq make_sequence(const StoreOptions& opts) {
  if constexpr (std::is_same_v<Seq, BtreeSequence>)
    return BtreeSequence(opts.node_bytes);
  else
    return Seq();
}

/// Upper and flipped lower chain in one sequence type.
template <class K, class Seq>
class ChainPair {
 public:
  explicit ChainPair(const StoreOptions& opts = {})
      : upper_(make_sequence<Seq>(opts)), lower_(make_sequence<Seq>(opts)) {}

  /// Returns true when q became a vertex.
  bool insert(const Point& q) {
    const bool up = insert_chain(upper_, q);
    const bool low = insert_chain(lower_, flip_y(q));
    return up || low;
  }

  void clear() {
    upper_.clear();
    lower_.clear();
  }

  const Seq& upper() const { return upper_; }
  const Seq& lower() const { return lower_; }
  bool empty() const { return upper_.size() == 0; }

  std::size_t hull_size() const {
    const std::size_t nu = upper_.size(), nl = lower_.size();
    if (nu == 0) return 0;
    return boundary_size(nu, nl, upper_.at(0), upper_.at(nu - 1), lower_.at(0), lower_.at(nl - 1));
  }

  std::size_t memory_bytes() const { return sequence_bytes(upper_) + sequence_bytes(lower_); }

 private:
  static bool insert_chain(Seq& chain, const Point& q) {
    const auto s = locate_splice<K>(chain, q);
    if (!s) return false;
    chain.replace_range(s->keep_left, s->keep_right, &q);
    return true;
  }

  Seq upper_;
  Seq lower_;
};

/// A single-hull store: Vector_Insert, AVL_Tree or B_Tree depending on Seq.
template <class K, class Seq>
class ChainStore final : public HullStructure {
 public:
  ChainStore(StructureKind kind, const StoreOptions& opts) : kind_(kind), chains_(opts) {
    peak_ = memory_bytes();
  }

  void insert(const Point& q) override {
    if (!is_finite(q)) throw ContractError("point coordinates must be finite");
    if (chains_.insert(q)) peak_ = std::max(peak_, memory_bytes());
  }

  std::size_t hull_size() const override { return chains_.hull_size(); }
  std::vector<Point> vertices() const override { return hull_boundary(upper_chain(), lower_chain_flipped()); }
  std::vector<Point> upper_chain() const override { return chains_.upper().to_vector(); }
  std::vector<Point> lower_chain_flipped() const override { return chains_.lower().to_vector(); }

  std::size_t memory_bytes() const override { return kStoreHeaderBytes + chains_.memory_bytes(); }
  std::size_t peak_bytes() const override { return peak_; }

  bool contains(const Point& q) const override {
    return hull_contains<K>(chains_.upper(), chains_.lower(), q);
  }
  Outcome<Point> extreme_point(const Direction& d) const override {
    return hull_extreme_point<K>(chains_.upper(), chains_.lower(), d);
  }
  bool line_hits_hull(const Line& l) const override {
    return hull_line_hits<K>(chains_.upper(), chains_.lower(), l);
  }
  Outcome<std::pair<Point, Point>> tangents_from_point(const Point& q) const override {
    return hull_tangents<K>(chains_.upper(), chains_.lower(), q);
  }
  std::optional<std::pair<Point, Point>> line_intersect(const Line& l) const override {
    return hull_line_intersect<K>(chains_.upper(), chains_.lower(), l);
  }

  StructureKind kind() const override { return kind_; }
  KernelKind kernel() const override { return K::kind; }

  const ChainPair<K, Seq>& chains() const { return chains_; }

 private:
  StructureKind kind_;
  ChainPair<K, Seq> chains_;
  std::size_t peak_ = 0;
};

}  // namespace ioch

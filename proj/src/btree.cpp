#include "ioch/btree.hpp"

#include <string>

namespace ioch {

BtreeSequence::BtreeSequence(std::size_t node_bytes)
    : leaf_max_(std::max<std::size_t>(3, node_bytes / sizeof(Point))),
      internal_max_(std::max<std::size_t>(3, node_bytes / sizeof(Entry))) {}

BtreeSequence::BtreeSequence(BtreeSequence&& o) noexcept
    : leaf_max_(o.leaf_max_),
      internal_max_(o.internal_max_),
      root_(std::exchange(o.root_, nullptr)),
      height_(std::exchange(o.height_, 0)),
      count_(std::exchange(o.count_, 0)),
      leaves_(std::exchange(o.leaves_, 0)),
      internals_(std::exchange(o.internals_, 0)) {}

BtreeSequence& BtreeSequence::operator=(BtreeSequence&& o) noexcept {
  if (this != &o) {
    clear();
    leaf_max_ = o.leaf_max_;
    internal_max_ = o.internal_max_;
    root_ = std::exchange(o.root_, nullptr);
    height_ = std::exchange(o.height_, 0);
    count_ = std::exchange(o.count_, 0);
    leaves_ = std::exchange(o.leaves_, 0);
    internals_ = std::exchange(o.internals_, 0);
  }
  return *this;
}

BtreeSequence::~BtreeSequence() { clear(); }

void BtreeSequence::clear() {
  destroy(root_);
  root_ = nullptr;
  height_ = 0;
  count_ = 0;
}

BtreeSequence::Node* BtreeSequence::new_leaf() {
  ++leaves_;
  Node* n = new Node;
  n->points.reserve(leaf_max_);
  return n;
}

BtreeSequence::Node* BtreeSequence::new_internal() {
  ++internals_;
  Node* n = new Node;
  n->leaf = false;
  n->entries.reserve(internal_max_);
  return n;
}

void BtreeSequence::free_node(Node* n) {
  (n->leaf ? leaves_ : internals_)--;
  delete n;
}

void BtreeSequence::destroy(Node* n) {
  if (!n) return;
  if (!n->leaf)
    for (const Entry& e : n->entries) destroy(e.child);
  free_node(n);
}

std::size_t BtreeSequence::total(const Node* n) {
  if (n->leaf) return n->points.size();
  std::size_t t = 0;
  for (const Entry& e : n->entries) t += e.count;
  return t;
}

BtreeSequence::Entry BtreeSequence::entry_for(Node* n) {
  if (n->leaf) return {n, n->points.size(), n->points.front(), n->points.back()};
  return {n, total(n), n->entries.front().min, n->entries.back().max};
}

Point BtreeSequence::at(std::size_t i) const {
  if (i >= count_) throw ContractError("BtreeSequence::at out of range");
  const Node* n = root_;
  while (!n->leaf) {
    std::size_t k = 0;
    while (i >= n->entries[k].count) i -= n->entries[k++].count;
    n = n->entries[k].child;
  }
  return n->points[i];
}

std::size_t BtreeSequence::lower_bound_x(double x) const {
  if (!root_) return 0;
  const Node* n = root_;
  std::size_t base = 0;
  while (!n->leaf) {
    const auto& e = n->entries;
    std::size_t k = 0;
    while (k < e.size() && e[k].max.x < x) base += e[k++].count;
    if (k == e.size()) return base;
    n = e[k].child;
  }
  const auto& p = n->points;
  const auto it = std::lower_bound(p.begin(), p.end(), x, [](const Point& a, double v) { return a.x < v; });
  return base + static_cast<std::size_t>(it - p.begin());
}

std::vector<Point> BtreeSequence::to_vector() const {
  std::vector<Point> out;
  out.reserve(count_);
  auto walk = [&](auto&& self, const Node* n) -> void {
    if (n->leaf) {
      out.insert(out.end(), n->points.begin(), n->points.end());
      return;
    }
    for (const Entry& e : n->entries) self(self, e.child);
  };
  if (root_) walk(walk, root_);
  return out;
}

BtreeSequence::Tree BtreeSequence::from_entries(Node* reuse, std::vector<Entry> entries, int h) {
  if (entries.size() <= 1) {
    if (reuse) free_node(reuse);
    if (entries.empty()) return {};
    return {entries[0].child, h - 1};
  }
  Node* n = reuse ? reuse : new_internal();
  n->entries = std::move(entries);
  return {n, h};
}

std::pair<BtreeSequence::Tree, BtreeSequence::Tree> BtreeSequence::split(Node* n, int h, std::size_t i) {
  if (!n) return {};
  const std::size_t tot = total(n);
  if (i == 0) return {Tree{}, Tree{n, h}};
  if (i >= tot) return {Tree{n, h}, Tree{}};
  if (n->leaf) {
    Node* r = new_leaf();
    r->points.assign(n->points.begin() + static_cast<std::ptrdiff_t>(i), n->points.end());
    n->points.resize(i);
    return {Tree{n, 0}, Tree{r, 0}};
  }
  std::size_t k = 0, acc = 0;
  while (acc + n->entries[k].count <= i) acc += n->entries[k++].count;
  Node* child = n->entries[k].child;
  std::vector<Entry> left(n->entries.begin(), n->entries.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<Entry> right(n->entries.begin() + static_cast<std::ptrdiff_t>(k) + 1, n->entries.end());
  auto [lc, rc] = split(child, h - 1, i - acc);
  Tree lt = from_entries(n, std::move(left), h);
  Tree rt = from_entries(nullptr, std::move(right), h);
  return {join(lt, lc), join(rc, rt)};
}

std::vector<BtreeSequence::Node*> BtreeSequence::merge_siblings(Node* a, Node* b) {
  if (width(a) >= min_width(a) && width(b) >= min_width(b)) return {a, b};
  if (a->leaf) {
    a->points.insert(a->points.end(), b->points.begin(), b->points.end());
  } else {
    a->entries.insert(a->entries.end(), b->entries.begin(), b->entries.end());
  }
  free_node(b);
  if (width(a) <= max_width(a)) return {a};
  Node* a2 = a->leaf ? new_leaf() : new_internal();
  const std::size_t keep = width(a) - width(a) / 2;
  if (a->leaf) {
    a2->points.assign(a->points.begin() + static_cast<std::ptrdiff_t>(keep), a->points.end());
    a->points.resize(keep);
  } else {
    a2->entries.assign(a->entries.begin() + static_cast<std::ptrdiff_t>(keep), a->entries.end());
    a->entries.resize(keep);
  }
  return {a, a2};
}

namespace {

template <class V>
void split_half(V& from, V& to) {
  const std::size_t keep = from.size() - from.size() / 2;
  to.assign(from.begin() + static_cast<std::ptrdiff_t>(keep), from.end());
  from.resize(keep);
}

}  // namespace

std::vector<BtreeSequence::Node*> BtreeSequence::join_right(Node* a, int ha, Node* b, int hb) {
  if (ha == hb) return merge_siblings(a, b);
  const std::vector<Node*> parts = join_right(a->entries.back().child, ha - 1, b, hb);
  a->entries.pop_back();
  for (Node* p : parts) a->entries.push_back(entry_for(p));
  if (a->entries.size() <= internal_max_) return {a};
  Node* a2 = new_internal();
  split_half(a->entries, a2->entries);
  return {a, a2};
}

std::vector<BtreeSequence::Node*> BtreeSequence::join_left(Node* a, int ha, Node* b, int hb) {
  if (ha == hb) return merge_siblings(a, b);
  const std::vector<Node*> parts = join_left(a, ha, b->entries.front().child, hb - 1);
  b->entries.erase(b->entries.begin());
  for (std::size_t k = parts.size(); k > 0; --k) b->entries.insert(b->entries.begin(), entry_for(parts[k - 1]));
  if (b->entries.size() <= internal_max_) return {b};
  Node* b2 = new_internal();
  split_half(b->entries, b2->entries);
  return {b, b2};
}

BtreeSequence::Tree BtreeSequence::make_tree(std::vector<Node*> parts, int h) {
  if (parts.size() == 1) return {parts[0], h};
  Node* r = new_internal();
  for (Node* p : parts) r->entries.push_back(entry_for(p));
  return {r, h + 1};
}

BtreeSequence::Tree BtreeSequence::join(Tree a, Tree b) {
  if (!a.root) return b;
  if (!b.root) return a;
  if (a.height >= b.height) return make_tree(join_right(a.root, a.height, b.root, b.height), a.height);
  return make_tree(join_left(a.root, a.height, b.root, b.height), b.height);
}

bool BtreeSequence::try_in_leaf(std::size_t lo, std::size_t hi, const Point* q) {
  if (!root_) {
    if (!q) return true;
    root_ = new_leaf();
    root_->points.push_back(*q);
    count_ = 1;
    height_ = 0;
    return true;
  }
  path_.clear();
  Node* n = root_;
  std::size_t base = 0;
  while (!n->leaf) {
    const auto& e = n->entries;
    std::size_t k = 0;
    while (k + 1 < e.size() && lo >= base + e[k].count) base += e[k++].count;
    path_.emplace_back(n, k);
    n = e[k].child;
  }
  auto& p = n->points;
  const std::size_t off = lo - base, end = hi - base;
  if (end > p.size()) return false;
  const std::size_t removed = end - off;
  const std::size_t w = p.size() - removed + (q ? 1 : 0);
  if (w == 0 || w > leaf_max_ || (n != root_ && w < min_width(n))) return false;
  const auto first = p.begin() + static_cast<std::ptrdiff_t>(off);
  if (q && removed > 0) {
    *first = *q;
    p.erase(first + 1, p.begin() + static_cast<std::ptrdiff_t>(end));
  } else if (q) {
    p.insert(first, *q);
  } else {
    p.erase(first, p.begin() + static_cast<std::ptrdiff_t>(end));
  }
  const std::ptrdiff_t delta = (q ? 1 : 0) - static_cast<std::ptrdiff_t>(removed);
  Node* child = n;
  for (std::size_t d = path_.size(); d > 0; --d) {
    auto [parent, k] = path_[d - 1];
    Entry& e = parent->entries[k];
    e.count = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(e.count) + delta);
    e.min = child->leaf ? child->points.front() : child->entries.front().min;
    e.max = child->leaf ? child->points.back() : child->entries.back().max;
    child = parent;
  }
  count_ = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(count_) + delta);
  return true;
}

void BtreeSequence::replace_range(std::size_t lo, std::size_t hi, const Point* q) {
  if (lo > hi || hi > count_) throw ContractError("BtreeSequence::replace_range out of range");
  if (try_in_leaf(lo, hi, q)) return;
  auto [a, bc] = split(root_, height_, lo);
  auto [b, c] = split(bc.root, bc.height, hi - lo);
  destroy(b.root);
  Tree mid;
  if (q) {
    mid.root = new_leaf();
    mid.root->points.push_back(*q);
  }
  const Tree t = join(join(a, mid), c);
  root_ = t.root;
  height_ = t.height;
  count_ = count_ - (hi - lo) + (q ? 1 : 0);
}

void BtreeSequence::check_invariants() const {
  int leaf_depth = -1;
  std::size_t leaves = 0, internals = 0;
  auto walk = [&](auto&& self, const Node* n, int depth) -> std::size_t {
    const bool is_root = n == root_;
    const std::size_t w = width(n);
    if (w > max_width(n)) throw ContractError("btree: node over capacity");
    if (!is_root && w < min_width(n)) throw ContractError("btree: node under minimum occupancy");
    if (w == 0) throw ContractError("btree: empty node");
    if (n->leaf) {
      ++leaves;
      if (leaf_depth < 0) leaf_depth = depth;
      if (leaf_depth != depth) throw ContractError("btree: leaves at different depths");
      return w;
    }
    ++internals;
    if (is_root && w < 2) throw ContractError("btree: internal root with one child");
    std::size_t t = 0;
    for (const Entry& e : n->entries) {
      const std::size_t c = self(self, e.child, depth + 1);
      const Entry fresh = entry_for(e.child);
      if (c != e.count || fresh.count != e.count) throw ContractError("btree: stale child count");
      if (!(fresh.min == e.min) || !(fresh.max == e.max)) throw ContractError("btree: stale child bounds");
      t += c;
    }
    return t;
  };
  const std::size_t t = root_ ? walk(walk, root_, 0) : 0;
  if (t != count_) throw ContractError("btree: size mismatch");
  if (root_ && leaf_depth != height_) throw ContractError("btree: height mismatch");
  if (leaves != leaves_ || internals != internals_)
    throw ContractError("btree: node counters " + std::to_string(leaves_) + "/" + std::to_string(internals_) +
                        " vs " + std::to_string(leaves) + "/" + std::to_string(internals));
}

}  // namespace ioch

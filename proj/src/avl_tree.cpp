#include "ioch/avl_tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace ioch {

AvlSequence::AvlSequence(AvlSequence&& other) noexcept : root_(std::exchange(other.root_, nullptr)) {}

AvlSequence& AvlSequence::operator=(AvlSequence&& other) noexcept {
  if (this != &other) {
    clear();
    root_ = std::exchange(other.root_, nullptr);
  }
  return *this;
}

AvlSequence::~AvlSequence() { clear(); }

void AvlSequence::clear() {
  destroy(root_);
  root_ = nullptr;
}

void AvlSequence::destroy(Node* n) {
  while (n) {
    destroy(n->right);
    Node* l = n->left;
    delete n;
    n = l;
  }
}

Point AvlSequence::at(std::size_t i) const {
  if (i >= size()) throw ContractError("AvlSequence::at out of range");
  const Node* n = root_;
  for (;;) {
    const std::size_t ls = sz(n->left);
    if (i < ls) {
      n = n->left;
    } else if (i == ls) {
      return n->p;
    } else {
      i -= ls + 1;
      n = n->right;
    }
  }
}

std::size_t AvlSequence::lower_bound_x(double x) const {
  std::size_t result = size(), base = 0;
  for (const Node* n = root_; n;) {
    const std::size_t j = base + sz(n->left);
    if (n->p.x < x) {
      base = j + 1;
      n = n->right;
    } else {
      result = j;
      n = n->left;
    }
  }
  return result;
}

void AvlSequence::update(Node* n) {
  n->size = static_cast<std::uint32_t>(sz(n->left) + sz(n->right) + 1);
  n->height = std::max(ht(n->left), ht(n->right)) + 1;
}

AvlSequence::Node* AvlSequence::rotate_left(Node* n) {
  Node* r = n->right;
  n->right = r->left;
  r->left = n;
  update(n);
  update(r);
  return r;
}

AvlSequence::Node* AvlSequence::rotate_right(Node* n) {
  Node* l = n->left;
  n->left = l->right;
  l->right = n;
  update(n);
  update(l);
  return l;
}

AvlSequence::Node* AvlSequence::rebalance(Node* n) {
  update(n);
  const int bf = ht(n->left) - ht(n->right);
  if (bf > 1) {
    if (ht(n->left->left) < ht(n->left->right)) n->left = rotate_left(n->left);
    return rotate_right(n);
  }
  if (bf < -1) {
    if (ht(n->right->right) < ht(n->right->left)) n->right = rotate_right(n->right);
    return rotate_left(n);
  }
  return n;
}

AvlSequence::Node* AvlSequence::join(Node* l, Node* mid, Node* r) {
  if (ht(l) > ht(r) + 1) {
    l->right = join(l->right, mid, r);
    return rebalance(l);
  }
  if (ht(r) > ht(l) + 1) {
    r->left = join(l, mid, r->left);
    return rebalance(r);
  }
  mid->left = l;
  mid->right = r;
  update(mid);
  return mid;
}

AvlSequence::Node* AvlSequence::join2(Node* l, Node* r) {
  if (!l) return r;
  if (!r) return l;
  Node *first = nullptr, *rest = nullptr;
  split(r, 1, first, rest);
  return join(l, first, rest);
}

void AvlSequence::split(Node* t, std::size_t i, Node*& l, Node*& r) {
  if (!t) {
    l = r = nullptr;
    return;
  }
  const std::size_t ls = sz(t->left);
  Node *a = nullptr, *b = nullptr;
  Node* tl = t->left;
  Node* tr = t->right;
  if (i <= ls) {
    split(tl, i, a, b);
    l = a;
    r = join(b, t, tr);
  } else {
    split(tr, i - ls - 1, a, b);
    l = join(tl, t, a);
    r = b;
  }
}

namespace {

AvlSequence::Node* leftmost(AvlSequence::Node* n) {
  if (n)
    while (n->left) n = n->left;
  return n;
}

AvlSequence::Node* rightmost(AvlSequence::Node* n) {
  if (n)
    while (n->right) n = n->right;
  return n;
}

}  // namespace

void AvlSequence::replace_range(std::size_t lo, std::size_t hi, const Point* q) {
  if (lo > hi || hi > size()) throw ContractError("AvlSequence::replace_range out of range");
  Node *a = nullptr, *bc = nullptr, *b = nullptr, *c = nullptr;
  split(root_, lo, a, bc);
  split(bc, hi - lo, b, c);
  destroy(b);
  Node* last_a = rightmost(a);
  Node* first_c = leftmost(c);
  if (q) {
    Node* m = new Node{*q};
    m->next = first_c;
    if (last_a) last_a->next = m;
    root_ = join(a, m, c);
  } else {
    if (last_a) last_a->next = first_c;
    root_ = join2(a, c);
  }
}

std::vector<Point> AvlSequence::to_vector() const {
  std::vector<Point> out;
  out.reserve(size());
  for (const Node* n = leftmost(root_); n; n = n->next) out.push_back(n->p);
  return out;
}

void AvlSequence::check_invariants() const {
  std::vector<const Node*> order;
  auto walk = [&](auto&& self, const Node* n) -> void {
    if (!n) return;
    self(self, n->left);
    order.push_back(n);
    self(self, n->right);
    if (n->size != sz(n->left) + sz(n->right) + 1) throw ContractError("avl: bad subtree size");
    if (n->height != std::max(ht(n->left), ht(n->right)) + 1) throw ContractError("avl: bad height");
    if (std::abs(ht(n->left) - ht(n->right)) > 1) throw ContractError("avl: unbalanced node");
  };
  walk(walk, root_);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Node* expect = i + 1 < order.size() ? order[i + 1] : nullptr;
    if (order[i]->next != expect) throw ContractError("avl: broken successor thread at " + std::to_string(i));
  }
  if (root_ && root_->height > 1.4405 * std::log2(static_cast<double>(size()) + 2.0))
    throw ContractError("avl: height above the AVL bound");
}

}  // namespace ioch

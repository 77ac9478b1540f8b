#include "cograph/dynamic_forest.hpp"

#include <utility>

#include "cograph/error.hpp"

namespace cograph {

DynamicForest::Handle DynamicForest::add_node() {
  nodes_.emplace_back();
  return static_cast<Handle>(nodes_.size() - 1);
}

void DynamicForest::ensure(std::size_t n) {
  if (nodes_.size() < n) nodes_.resize(n);
}

void DynamicForest::check(Handle x) const {
  if (x >= nodes_.size()) throw ContractError("unknown forest handle");
}

bool DynamicForest::is_splay_root(Handle x) const {
  const Handle p = nodes_[x].parent;
  return p == kNil || (nodes_[p].child[0] != x && nodes_[p].child[1] != x);
}

void DynamicForest::push(Handle x) {
  auto& n = nodes_[x];
  if (!n.reversed) return;
  std::swap(n.child[0], n.child[1]);
  for (Handle c : n.child) {
    if (c != kNil) nodes_[c].reversed = !nodes_[c].reversed;
  }
  n.reversed = false;
}

void DynamicForest::rotate(Handle x) {
  const Handle p = nodes_[x].parent;
  const Handle g = nodes_[p].parent;
  const int side = nodes_[p].child[1] == x ? 1 : 0;
  const Handle moved = nodes_[x].child[side ^ 1];

  if (!is_splay_root(p)) {
    auto& gc = nodes_[g].child;
    (gc[0] == p ? gc[0] : gc[1]) = x;
  }
  nodes_[x].parent = g;

  nodes_[x].child[side ^ 1] = p;
  nodes_[p].parent = x;

  nodes_[p].child[side] = moved;
  if (moved != kNil) nodes_[moved].parent = p;
}

void DynamicForest::splay(Handle x) {
  // Clear pending reversals from the splay root down to x first.
  scratch_.clear();
  for (Handle y = x;; y = nodes_[y].parent) {
    scratch_.push_back(y);
    if (is_splay_root(y)) break;
  }
  for (auto it = scratch_.rbegin(); it != scratch_.rend(); ++it) push(*it);

  while (!is_splay_root(x)) {
    const Handle p = nodes_[x].parent;
    if (!is_splay_root(p)) {
      const Handle g = nodes_[p].parent;
      const bool zigzig = (nodes_[g].child[0] == p) == (nodes_[p].child[0] == x);
      rotate(zigzig ? p : x);
    }
    rotate(x);
  }
}

DynamicForest::Handle DynamicForest::access(Handle x) {
  Handle last = kNil;
  for (Handle y = x; y != kNil; y = nodes_[y].parent) {
    splay(y);
    nodes_[y].child[1] = last;
    last = y;
  }
  splay(x);
  return last;
}

DynamicForest::Handle DynamicForest::find_root(Handle u) {
  check(u);
  access(u);
  Handle r = u;
  push(r);
  while (nodes_[r].child[0] != kNil) {
    r = nodes_[r].child[0];
    push(r);
  }
  splay(r);
  return r;
}

DynamicForest::Handle DynamicForest::parent_of(Handle u) {
  check(u);
  access(u);
  push(u);
  Handle p = nodes_[u].child[0];
  if (p == kNil) return kNone;
  push(p);
  while (nodes_[p].child[1] != kNil) {
    p = nodes_[p].child[1];
    push(p);
  }
  splay(p);
  return p;
}

void DynamicForest::evert(Handle u) {
  check(u);
  access(u);
  nodes_[u].reversed = !nodes_[u].reversed;
}

void DynamicForest::link(Handle parent, Handle child) {
  check(parent);
  check(child);
  if (find_root(child) != child) throw ContractError("link: child is not a root");
  if (find_root(parent) == child) throw ContractError("link: would create a cycle");
  access(child);
  nodes_[child].parent = parent;
}

void DynamicForest::cut(Handle node) {
  check(node);
  access(node);
  push(node);
  const Handle above = nodes_[node].child[0];
  if (above == kNil) throw ContractError("cut: node is a root");
  nodes_[above].parent = kNil;
  nodes_[node].child[0] = kNil;
}

DynamicForest::Handle DynamicForest::lca(Handle u, Handle v) {
  check(u);
  check(v);
  if (find_root(u) != find_root(v)) throw LookupError("lca: nodes are in different trees");
  access(u);
  return access(v);
}

DynamicForest::Handle DynamicForest::next_step_to_descendant(Handle u, Handle v) {
  if (u == v || lca(u, v) != u) throw ContractError("next_step_to_descendant: not a strict descendant");
  const Handle r = find_root(u);
  evert(v);
  const Handle step = parent_of(u);
  evert(r);
  return step;
}

}  // namespace cograph

#include "cograph/cotree.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <utility>

#include "cograph/error.hpp"

namespace cograph {

NodeId Cotree::leaf_of(Vertex x) const {
  if (!contains(x)) throw LookupError("vertex " + std::to_string(x) + " is not in the cotree");
  return leaf_of_vertex_[x];
}

std::vector<Vertex> Cotree::vertices() const {
  std::vector<Vertex> out;
  out.reserve(vertex_total_);
  for (Vertex v = 0; v < leaf_of_vertex_.size(); ++v) {
    if (leaf_of_vertex_[v] != kNoNode) out.push_back(v);
  }
  return out;
}

NodeId Cotree::allocate(NodeKind kind) {
  const auto id = static_cast<NodeId>(nodes_.size());
  CotreeNode n;
  n.kind = kind;
  n.leaf_count = kind == NodeKind::Leaf ? 1 : 0;
  nodes_.push_back(n);
  if (observer_) observer_->node_created(id);
  return id;
}

NodeId Cotree::new_leaf(Vertex x) {
  if (contains(x)) throw ContractError("vertex " + std::to_string(x) + " already in the cotree");
  const NodeId id = allocate(NodeKind::Leaf);
  nodes_[id].vertex = x;
  if (leaf_of_vertex_.size() <= x) leaf_of_vertex_.resize(x + 1, kNoNode);
  leaf_of_vertex_[x] = id;
  ++vertex_total_;
  return id;
}

NodeId Cotree::new_internal(NodeKind kind, std::span<const NodeId> children) {
  if (kind == NodeKind::Leaf) throw ContractError("new_internal needs Series or Parallel");
  for (NodeId c : children) {
    if (c >= nodes_.size()) throw ContractError("unknown child node");
    if (nodes_[c].parent != kNoNode || c == root_) throw ContractError("child already attached");
  }
  const NodeId id = allocate(kind);
  for (NodeId c : children) append_child(id, c);
  return id;
}

void Cotree::set_root(NodeId u) {
  if (u >= nodes_.size() || nodes_[u].parent != kNoNode) throw ContractError("root must be a detached node");
  root_ = u;
}

void Cotree::attach_after(NodeId parent, NodeId child, NodeId after) {
  auto& p = nodes_[parent];
  auto& c = nodes_[child];
  c.parent = parent;
  c.prev_sibling = after;
  if (after == kNoNode) {
    c.next_sibling = p.first_child;
    p.first_child = child;
  } else {
    c.next_sibling = nodes_[after].next_sibling;
    nodes_[after].next_sibling = child;
  }
  if (c.next_sibling == kNoNode) {
    p.last_child = child;
  } else {
    nodes_[c.next_sibling].prev_sibling = child;
  }
  ++p.child_count;
  if (track_leaf_counts_) p.leaf_count += c.leaf_count;
  if (observer_) observer_->child_attached(parent, child, after);
}

NodeId Cotree::detach(NodeId child) {
  auto& c = nodes_[child];
  const NodeId parent = c.parent;
  auto& p = nodes_[parent];
  const NodeId prev = c.prev_sibling;
  if (prev == kNoNode) {
    p.first_child = c.next_sibling;
  } else {
    nodes_[prev].next_sibling = c.next_sibling;
  }
  if (c.next_sibling == kNoNode) {
    p.last_child = prev;
  } else {
    nodes_[c.next_sibling].prev_sibling = prev;
  }
  c.parent = c.prev_sibling = c.next_sibling = kNoNode;
  --p.child_count;
  if (track_leaf_counts_) p.leaf_count -= c.leaf_count;
  if (observer_) observer_->child_detached(parent, child);
  return prev;
}

void Cotree::bump_ancestors(NodeId from, std::int64_t delta) {
  if (!track_leaf_counts_) return;
  for (NodeId a = from; a != kNoNode; a = nodes_[a].parent) {
    nodes_[a].leaf_count = static_cast<std::uint32_t>(nodes_[a].leaf_count + delta);
  }
}

std::size_t Cotree::depth(NodeId u) const {
  std::size_t d = 0;
  while (nodes_[u].parent != kNoNode) {
    u = nodes_[u].parent;
    ++d;
  }
  return d;
}

bool Cotree::is_ancestor(NodeId anc, NodeId u) const {
  for (NodeId a = u; a != kNoNode; a = nodes_[a].parent) {
    if (a == anc) return true;
  }
  return false;
}

NodeId Cotree::lca(NodeId a, NodeId b) const {
  auto da = depth(a), db = depth(b);
  while (da > db) {
    a = nodes_[a].parent;
    --da;
  }
  while (db > da) {
    b = nodes_[b].parent;
    --db;
  }
  while (a != b) {
    a = nodes_[a].parent;
    b = nodes_[b].parent;
    if (a == kNoNode || b == kNoNode) throw LookupError("nodes are in different trees");
  }
  return a;
}

bool Cotree::adjacent(Vertex x, Vertex y) const {
  if (x == y) throw ContractError("adjacent() needs two distinct vertices");
  return nodes_[lca(leaf_of(x), leaf_of(y))].kind == NodeKind::Series;
}

namespace {

// Children-before-parent order of T_u.
std::vector<NodeId> post_order(const Cotree& t, NodeId u) {
  std::vector<NodeId> order;
  if (u == kNoNode) return order;
  std::vector<NodeId> stack{u};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (NodeId c : t.children(v)) stack.push_back(c);
  }
  std::reverse(order.begin(), order.end());
  return order;
}

}  // namespace

std::uint64_t Cotree::edge_count() const {
  std::vector<std::uint64_t> size(nodes_.size(), 0);
  std::uint64_t total = 0;
  for (NodeId u : post_order(*this, root_)) {
    if (is_leaf(u)) {
      size[u] = 1;
      continue;
    }
    std::uint64_t s = 0, sq = 0;
    for (NodeId c : children(u)) {
      s += size[c];
      sq += size[c] * size[c];
    }
    size[u] = s;
    if (kind(u) == NodeKind::Series) total += (s * s - sq) / 2;
  }
  return total;
}

std::vector<Vertex> Cotree::leaves_under(NodeId u) const {
  std::vector<Vertex> out;
  std::vector<NodeId> stack{u};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (is_leaf(v)) {
      out.push_back(nodes_[v].vertex);
      continue;
    }
    // Push in reverse so the first child is visited first.
    for (NodeId c = nodes_[v].last_child; c != kNoNode; c = nodes_[c].prev_sibling) stack.push_back(c);
  }
  return out;
}

std::vector<Vertex> Cotree::leaf_order() const {
  if (empty()) return {};
  return leaves_under(root_);
}

std::vector<Edge> Cotree::edges() const {
  std::vector<Edge> out;
  if (empty()) return out;
  std::vector<NodeId> stack{root_};
  std::vector<std::vector<Vertex>> parts;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    if (is_leaf(u)) continue;
    for (NodeId c : children(u)) stack.push_back(c);
    if (kind(u) != NodeKind::Series) continue;
    parts.clear();
    for (NodeId c : children(u)) parts.push_back(leaves_under(c));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        for (Vertex a : parts[i]) {
          for (Vertex b : parts[j]) out.push_back({std::min(a, b), std::max(a, b)});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

NodeId Cotree::attach_uniform(Vertex x, bool full) {
  const NodeId leaf = new_leaf(x);
  if (empty()) {
    root_ = leaf;
    return leaf;
  }
  const NodeKind want = full ? NodeKind::Series : NodeKind::Parallel;
  if (kind(root_) == want) {
    append_child(root_, leaf);
    return leaf;
  }
  const NodeId old_root = root_;
  const NodeId top = allocate(want);
  append_child(top, old_root);
  append_child(top, leaf);
  root_ = top;
  return leaf;
}

NodeId Cotree::insert_leaf(NodeId w, std::span<const NodeId> nonhollow, Vertex x) {
  if (w >= nodes_.size() || is_leaf(w)) throw ContractError("insertion node must be internal");
  if (nonhollow.empty()) throw ContractError("insertion node needs a non-hollow child");
  if (nonhollow.size() >= child_count(w)) throw ContractError("insertion node needs a hollow child");
  std::vector<NodeId> sorted(nonhollow.begin(), nonhollow.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ContractError("duplicate non-hollow child");
  }
  for (NodeId c : sorted) {
    if (c >= nodes_.size() || nodes_[c].parent != w) throw ContractError("non-hollow node is not a child of w");
  }
  if (contains(x)) throw ContractError("vertex " + std::to_string(x) + " already in the cotree");

  const NodeId leaf = new_leaf(x);
  const std::size_t hollow = child_count(w) - nonhollow.size();

  if (kind(w) == NodeKind::Series) {
    if (hollow == 1) {
      // w keeps its non-hollow children; x joins the lone hollow child in parallel.
      NodeId h = kNoNode;
      for (NodeId c : children(w)) {
        if (!std::binary_search(sorted.begin(), sorted.end(), c)) {
          h = c;
          break;
        }
      }
      detach(h);
      NodeId q = h;
      if (kind(h) == NodeKind::Parallel) {
        append_child(h, leaf);
      } else {
        q = allocate(NodeKind::Parallel);
        append_child(q, h);
        append_child(q, leaf);
      }
      append_child(w, q);
      bump_ancestors(nodes_[w].parent, 1);
      return leaf;
    }
    // w keeps its hollow children and moves under a new parallel node with x;
    // a new series node takes w's place and adopts the non-hollow children.
    const NodeId p = nodes_[w].parent;
    NodeId prev = kNoNode;
    if (p != kNoNode) prev = detach(w);
    const NodeId top = allocate(NodeKind::Series);
    for (NodeId c : nonhollow) {
      detach(c);
      append_child(top, c);
    }
    const NodeId q = allocate(NodeKind::Parallel);
    append_child(q, w);
    append_child(q, leaf);
    append_child(top, q);
    if (p == kNoNode) {
      root_ = top;
    } else {
      attach_after(p, top, prev);
      bump_ancestors(nodes_[p].parent, 1);
    }
    return leaf;
  }

  // Parallel insertion node: w keeps its hollow children and gains S(x, non-hollow part).
  if (nonhollow.size() == 1) {
    const NodeId nh = nonhollow.front();
    if (kind(nh) == NodeKind::Series) {
      append_child(nh, leaf);
      bump_ancestors(w, 1);
      return leaf;
    }
    detach(nh);
    const NodeId r = allocate(NodeKind::Series);
    append_child(r, nh);
    append_child(r, leaf);
    append_child(w, r);
    bump_ancestors(nodes_[w].parent, 1);
    return leaf;
  }
  const NodeId group = allocate(NodeKind::Parallel);
  for (NodeId c : nonhollow) {
    detach(c);
    append_child(group, c);
  }
  const NodeId r = allocate(NodeKind::Series);
  append_child(r, group);
  append_child(r, leaf);
  append_child(w, r);
  bump_ancestors(nodes_[w].parent, 1);
  return leaf;
}

void Cotree::refresh_leaf_counts() {
  for (NodeId u : post_order(*this, root_)) {
    if (is_leaf(u)) {
      nodes_[u].leaf_count = 1;
      continue;
    }
    std::uint32_t s = 0;
    for (NodeId c : children(u)) s += nodes_[c].leaf_count;
    nodes_[u].leaf_count = s;
  }
}

std::optional<CotreeViolation> Cotree::validate() const {
  if (empty()) {
    if (vertex_total_ != 0) return CotreeViolation{kNoNode, "leaves present but no root"};
    return std::nullopt;
  }
  if (nodes_[root_].parent != kNoNode) return CotreeViolation{root_, "root has a parent"};

  std::size_t leaves_seen = 0;
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    const auto& n = nodes_[u];
    if (n.kind == NodeKind::Leaf) {
      if (n.first_child != kNoNode) return CotreeViolation{u, "leaf with children"};
      if (!contains(n.vertex) || leaf_of_vertex_[n.vertex] != u) {
        return CotreeViolation{u, "leaf not registered for its vertex"};
      }
      ++leaves_seen;
      continue;
    }
    std::uint32_t count = 0;
    NodeId prev = kNoNode;
    for (NodeId c = n.first_child; c != kNoNode; c = nodes_[c].next_sibling) {
      if (nodes_[c].parent != u) return CotreeViolation{c, "parent pointer mismatch"};
      if (nodes_[c].prev_sibling != prev) return CotreeViolation{c, "sibling links broken"};
      if (nodes_[c].kind == n.kind) return CotreeViolation{c, "same-label adjacency"};
      prev = c;
      ++count;
      stack.push_back(c);
    }
    if (prev != n.last_child) return CotreeViolation{u, "last child pointer broken"};
    if (count != n.child_count) return CotreeViolation{u, "child count mismatch"};
    if (count == 0) return CotreeViolation{u, "internal node without children"};
    if (count == 1) return CotreeViolation{u, "unary internal node"};
  }
  if (leaves_seen != vertex_total_) return CotreeViolation{root_, "leaf not reachable from root"};

  if (track_leaf_counts_) {
    for (NodeId u : post_order(*this, root_)) {
      std::uint32_t expect = 1;
      if (!is_leaf(u)) {
        expect = 0;
        for (NodeId c : children(u)) expect += nodes_[c].leaf_count;
      }
      if (nodes_[u].leaf_count != expect) return CotreeViolation{u, "leaf count mismatch"};
    }
  }
  return std::nullopt;
}

std::string Cotree::text_of(NodeId top, bool canonical) const {
  // Post-order so child texts exist before their parent's.
  std::vector<std::string> text(nodes_.size());
  for (NodeId u : post_order(*this, top)) {
    if (is_leaf(u)) {
      text[u] = std::to_string(nodes_[u].vertex);
      continue;
    }
    std::vector<std::string> parts;
    for (NodeId c : children(u)) parts.push_back(std::move(text[c]));
    if (canonical) std::sort(parts.begin(), parts.end());
    std::string s(1, kind(u) == NodeKind::Series ? 'S' : 'P');
    s += '(';
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ',';
      s += parts[i];
    }
    s += ')';
    text[u] = std::move(s);
  }
  return std::move(text[top]);
}

std::string Cotree::serialize() const { return empty() ? std::string() : text_of(root_, false); }

std::string Cotree::canonical_string() const { return empty() ? std::string() : text_of(root_, true); }

Cotree Cotree::deserialize(std::string_view text) {
  Cotree t;
  struct Frame {
    NodeKind kind;
    std::vector<NodeId> children;
  };
  std::vector<Frame> stack;
  std::optional<NodeId> done;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError(0, "offset " + std::to_string(i) + ": " + what);
  };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto emit = [&](NodeId id) {
    if (stack.empty()) {
      if (done) throw fail("trailing content");
      done = id;
    } else {
      stack.back().children.push_back(id);
    }
  };
  // After an item inside a frame: expect ',' or ')'.
  bool expect_item = true;

  skip_ws();
  if (i == text.size()) return t;
  while (true) {
    skip_ws();
    if (i == text.size()) break;
    const char c = text[i];
    if (expect_item) {
      if (c == 'S' || c == 'P') {
        ++i;
        skip_ws();
        if (i == text.size() || text[i] != '(') throw fail("expected '('");
        ++i;
        stack.push_back({c == 'S' ? NodeKind::Series : NodeKind::Parallel, {}});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::uint64_t v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
          if (v > std::numeric_limits<Vertex>::max() - 1) throw fail("vertex id too large");
          ++i;
        }
        if (t.contains(static_cast<Vertex>(v))) throw fail("duplicate vertex " + std::to_string(v));
        emit(t.new_leaf(static_cast<Vertex>(v)));
        expect_item = false;
        continue;
      }
      throw fail(std::string("unexpected '") + c + "'");
    }
    if (stack.empty()) throw fail("trailing content");
    if (c == ',') {
      ++i;
      expect_item = true;
      continue;
    }
    if (c == ')') {
      ++i;
      Frame f = std::move(stack.back());
      stack.pop_back();
      if (f.children.size() < 2) throw fail("unary internal node");
      emit(t.new_internal(f.kind, f.children));
      continue;
    }
    throw fail(std::string("unexpected '") + c + "'");
  }
  if (!stack.empty() || !done) throw fail("unexpected end of input");
  t.set_root(*done);
  return t;
}

Graph to_graph(const Cotree& t, std::size_t n) {
  Graph g(n);
  for (const auto& e : t.edges()) g.add_edge(e.u, e.v);
  return g;
}

namespace {

NodeId grow_random(Cotree& t, std::span<const Vertex> vs, NodeKind banned, std::size_t max_arity,
                   std::mt19937_64& rng) {
  if (vs.size() == 1) return t.new_leaf(vs.front());
  NodeKind kind;
  if (banned == NodeKind::Leaf) {
    kind = rng() % 2 ? NodeKind::Series : NodeKind::Parallel;
  } else {
    kind = banned == NodeKind::Series ? NodeKind::Parallel : NodeKind::Series;
  }
  const std::size_t k = 2 + rng() % (std::min(max_arity, vs.size()) - 1);
  // k-1 distinct cut points in 1..size-1.
  std::vector<std::size_t> cuts(vs.size() - 1);
  std::iota(cuts.begin(), cuts.end(), std::size_t{1});
  for (std::size_t i = 0; i + 1 < k; ++i) std::swap(cuts[i], cuts[i + rng() % (cuts.size() - i)]);
  cuts.resize(k - 1);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(vs.size());
  std::vector<NodeId> kids;
  std::size_t from = 0;
  for (std::size_t to : cuts) {
    kids.push_back(grow_random(t, vs.subspan(from, to - from), kind, max_arity, rng));
    from = to;
  }
  return t.new_internal(kind, kids);
}

}  // namespace

Cotree generate_random_cotree(std::size_t n, std::uint64_t seed, std::size_t max_arity) {
  if (max_arity < 2) throw InvalidParameters("max_arity must be at least 2");
  Cotree t;
  if (n == 0) return t;
  std::mt19937_64 rng(seed);
  std::vector<Vertex> vs(n);
  std::iota(vs.begin(), vs.end(), Vertex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(vs[i - 1], vs[rng() % i]);
  t.set_root(grow_random(t, vs, NodeKind::Leaf, max_arity, rng));
  return t;
}

}  // namespace cograph

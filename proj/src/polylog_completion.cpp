#include "cograph/polylog_completion.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "cograph/error.hpp"
#include "cograph/linear_completion.hpp"

namespace cograph {

// ---------------------------------------------------------------------------
// StructureMirror

StructureMirror::StructureMirror(const Cotree& t) {
  grow(t.node_capacity());
  if (t.empty()) return;
  std::vector<NodeId> stack{t.root()};
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    NodeId prev = kNoNode;
    for (NodeId c : t.children(u)) {
      child_attached(u, c, prev);
      prev = c;
      stack.push_back(c);
    }
  }
}

void StructureMirror::grow(std::size_t n) {
  forest_.ensure(n);
  if (orders_.size() < n) orders_.resize(n);
  if (handles_.size() < n) handles_.resize(n);
}

void StructureMirror::node_created(NodeId id) { grow(static_cast<std::size_t>(id) + 1); }

void StructureMirror::child_attached(NodeId parent, NodeId child, NodeId after) {
  forest_.link(parent, child);
  auto& order = orders_[parent];
  handles_[child] = after == kNoNode ? order.insert_front() : order.insert_after(handles_[after]);
}

void StructureMirror::child_detached(NodeId parent, NodeId child) {
  forest_.cut(child);
  orders_[parent].erase(handles_[child]);
}

// ---------------------------------------------------------------------------
// Factorizing permutation and extracted tree

std::vector<Vertex> sort_by_factorizing_permutation(const Cotree& t, std::span<const Vertex> neighbours,
                                                    StructureMirror& mirror, std::size_t* lca_queries) {
  std::vector<Vertex> out(neighbours.begin(), neighbours.end());
  auto& forest = mirror.forest();
  std::size_t queries = 0;
  std::sort(out.begin(), out.end(), [&](Vertex a, Vertex b) {
    if (a == b) return false;
    const NodeId la = t.leaf_of(a), lb = t.leaf_of(b);
    const NodeId u = forest.lca(la, lb);
    ++queries;
    const NodeId ca = forest.next_step_to_descendant(u, la);
    const NodeId cb = forest.next_step_to_descendant(u, lb);
    return mirror.child_precedes(u, ca, cb);
  });
  if (lca_queries) *lca_queries += queries;
  return out;
}

ExtractedTree build_extracted_tree(const Cotree& t, std::span<const Vertex> sorted_neighbours,
                                   StructureMirror& mirror) {
  ExtractedTree xt;
  if (sorted_neighbours.empty()) return xt;
  auto& forest = mirror.forest();
  constexpr auto kNone = ExtractedNode::kNone;

  auto add = [&](NodeId id) -> std::uint32_t {
    auto [it, fresh] = xt.index.try_emplace(id, static_cast<std::uint32_t>(xt.nodes.size()));
    if (fresh) {
      ExtractedNode n;
      n.node = id;
      n.kind = t.kind(id);
      xt.nodes.push_back(std::move(n));
    }
    return it->second;
  };

  // Rightmost branch of the tree built so far, top to bottom.
  std::vector<std::uint32_t> branch{add(t.leaf_of(sorted_neighbours.front()))};
  for (std::size_t i = 1; i < sorted_neighbours.size(); ++i) {
    const NodeId prev_leaf = t.leaf_of(sorted_neighbours[i - 1]);
    const NodeId leaf = t.leaf_of(sorted_neighbours[i]);
    const NodeId v = forest.lca(prev_leaf, leaf);
    ++xt.lca_queries;

    // The previous leaf is strictly below v.
    std::uint32_t last = branch.back();
    branch.pop_back();
    while (!branch.empty()) {
      const NodeId top = xt.nodes[branch.back()].node;
      if (top == v) break;
      ++xt.lca_queries;
      if (forest.lca(top, v) != v) break;  // top is above v
      xt.nodes[last].parent = branch.back();
      last = branch.back();
      branch.pop_back();
    }
    if (!branch.empty() && xt.nodes[branch.back()].node == v) {
      xt.nodes[last].parent = branch.back();
    } else {
      const std::uint32_t vi = add(v);
      xt.nodes[last].parent = vi;
      branch.push_back(vi);
    }
    branch.push_back(add(leaf));
  }
  for (std::size_t j = 1; j < branch.size(); ++j) xt.nodes[branch[j]].parent = branch[j - 1];
  xt.root = branch.front();

  // Creation order is left to right among siblings.
  for (std::uint32_t i = 0; i < xt.nodes.size(); ++i) {
    if (xt.nodes[i].parent != kNone) xt.nodes[xt.nodes[i].parent].children.push_back(i);
  }
  return xt;
}

// ---------------------------------------------------------------------------
// Insertion node selection

Selection select_insertion_node(const ExtractedTree& xt, const Cotree& t, StructureMirror& mirror) {
  Selection sel;
  if (xt.nodes.empty()) throw ContractError("empty extracted tree");

  // P_max and W': stop at the first parallel node on every root path.
  std::vector<char> in_wprime(xt.nodes.size(), 0);
  std::vector<std::uint32_t> wprime;
  {
    std::vector<std::uint32_t> stack{xt.root};
    while (!stack.empty()) {
      const std::uint32_t i = stack.back();
      stack.pop_back();
      const auto& n = xt.nodes[i];
      if (n.kind == NodeKind::Parallel || n.kind == NodeKind::Leaf) {
        if (n.kind == NodeKind::Parallel) sel.sets.p_max.push_back(n.node);
        wprime.push_back(i);
        in_wprime[i] = 1;
        continue;
      }
      for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
    }
  }
  for (auto i : wprime) sel.sets.w_prime.push_back(xt.nodes[i].node);

  auto record = [&](NodeId u, bool forced) {
    sel.forced_evaluations.emplace_back(u, forced);
    return forced;
  };
  // Forced test for members of W'.
  auto wprime_forced = [&](std::uint32_t i) {
    const auto& n = xt.nodes[i];
    if (n.kind == NodeKind::Leaf) return true;
    return n.extracted_child_count() == t.child_count(n.node);
  };
  // Forced test for the cotree parent of a forced W' member.
  auto parent_forced = [&](NodeId v) {
    if (t.kind(v) == NodeKind::Parallel) return false;
    const auto it = xt.index.find(v);
    if (it == xt.index.end()) return false;
    const auto& xv = xt.nodes[it->second];
    if (xv.extracted_child_count() != t.child_count(v)) return false;
    for (auto c : xv.children) {
      if (!in_wprime[c] || t.parent(xt.nodes[c].node) != v || !wprime_forced(c)) return false;
    }
    return true;
  };
  // Parallel nfas never have an eligible non-forced child; a series one
  // qualifies iff it has a hollow child.
  auto is_minimal = [&](NodeId n) {
    if (t.kind(n) != NodeKind::Series) return true;
    const auto it = xt.index.find(n);
    if (it == xt.index.end()) return t.child_count(n) > 1;
    return xt.nodes[it->second].extracted_child_count() < t.child_count(n);
  };

  std::unordered_set<NodeId> seen;
  std::uint32_t chosen_from = ExtractedNode::kNone;
  for (auto i : wprime) {
    const NodeId w = xt.nodes[i].node;
    NodeId nfa;
    if (!record(w, wprime_forced(i))) {
      nfa = w;
    } else {
      const NodeId v = t.parent(w);
      if (v == kNoNode) {
        sel.root_forced = true;
        return sel;
      }
      if (!record(v, parent_forced(v))) {
        nfa = v;
      } else {
        nfa = t.parent(v);
        if (nfa == kNoNode) {
          sel.root_forced = true;
          return sel;
        }
      }
    }
    if (!seen.insert(nfa).second) continue;
    if (!is_minimal(nfa)) continue;
    sel.sets.w_set.push_back(nfa);
    if (chosen_from == ExtractedNode::kNone) {
      chosen_from = i;
      sel.node = nfa;
    }
  }
  if (sel.node == kNoNode) throw std::logic_error("no completion-minimal insertion node found");

  // Non-hollow children of the chosen node, read off the extracted tree.
  const NodeId w = sel.node;
  if (const auto it = xt.index.find(w); it != xt.index.end()) {
    auto& forest = mirror.forest();
    for (auto c : xt.nodes[it->second].children) {
      const NodeId d = xt.nodes[c].node;
      sel.nonhollow_children.push_back(t.parent(d) == w ? d : forest.next_step_to_descendant(w, d));
    }
  } else {
    const NodeId from = xt.nodes[chosen_from].node;
    sel.nonhollow_children.push_back(t.parent(from) == w ? from : t.parent(from));
  }
  return sel;
}

// ---------------------------------------------------------------------------
// Engine

PolylogEngine::PolylogEngine() {
  tree_.set_leaf_count_tracking(false);
  tree_.set_observer(&mirror_);
}

PolylogEngine::PolylogEngine(Cotree t) : tree_(std::move(t)), mirror_(tree_) {
  tree_.set_leaf_count_tracking(false);
  tree_.set_observer(&mirror_);
}

PolylogEngine::~PolylogEngine() { tree_.set_observer(nullptr); }

Cotree PolylogEngine::release() {
  tree_.set_observer(nullptr);
  Cotree out = std::move(tree_);
  tree_ = Cotree();
  mirror_ = StructureMirror();
  tree_.set_leaf_count_tracking(false);
  tree_.set_observer(&mirror_);
  return out;
}

FastStep PolylogEngine::insert(Vertex x, std::span<const Vertex> neighbours) {
  if (tree_.contains(x)) throw ContractError("vertex " + std::to_string(x) + " already inserted");
  for (Vertex y : neighbours) tree_.leaf_of(y);
  FastStep step;
  if (neighbours.empty()) {
    tree_.attach_uniform(x, false);
    return step;
  }
  if (neighbours.size() == tree_.vertex_count()) {
    tree_.attach_uniform(x, true);
    step.kind = FastStep::Kind::AttachedFull;
    return step;
  }

  const auto sorted = sort_by_factorizing_permutation(tree_, neighbours, mirror_, &step.sort_lca_queries);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ContractError("duplicate neighbour");
  const ExtractedTree xt = build_extracted_tree(tree_, sorted, mirror_);
  step.lca_queries = xt.lca_queries;
  step.extracted_size = xt.nodes.size();

  Selection sel = select_insertion_node(xt, tree_, mirror_);
  if (sel.root_forced) {
    tree_.attach_uniform(x, true);
    step.kind = FastStep::Kind::AttachedFull;
    return step;
  }
  if (self_check_) verify_selection(neighbours, sel);
  step.kind = FastStep::Kind::Inserted;
  step.insertion_node = sel.node;
  step.nonhollow_children = std::move(sel.nonhollow_children);
  tree_.insert_leaf(step.insertion_node, step.nonhollow_children, x);
  return step;
}

void PolylogEngine::verify_selection(std::span<const Vertex> neighbours, const Selection& sel) const {
  const MarkTable marks = gather_marks(tree_, neighbours);
  const NodeId w = sel.node;
  if (!marks.contains(w)) throw std::logic_error("selected node is hollow");
  const Mark& mw = marks.at(w);
  if (mw.forced) throw std::logic_error("selected node is completion-forced");
  for (NodeId p = tree_.parent(w); p != kNoNode; p = tree_.parent(p)) {
    if (tree_.kind(p) == NodeKind::Parallel && marks.at(p).nonhollow_count() != 1) {
      throw std::logic_error("selected node is not eligible");
    }
  }
  bool minimal;
  if (tree_.kind(w) == NodeKind::Series) {
    minimal = tree_.child_count(w) > mw.nonhollow_count();
  } else {
    minimal = mw.nonhollow_count() >= 2 || marks.at(mw.nonhollow_children.front()).forced;
  }
  if (!minimal) throw std::logic_error("selected node is not a completion-minimal insertion node");

  auto expect = mw.nonhollow_children;
  auto got = sel.nonhollow_children;
  std::sort(expect.begin(), expect.end());
  std::sort(got.begin(), got.end());
  if (expect != got) throw std::logic_error("non-hollow children disagree with gather_marks");
  for (const auto& [u, forced] : sel.forced_evaluations) {
    if (!marks.contains(u) || marks.at(u).forced != forced) throw std::logic_error("forced flag disagreement");
  }
}

Completion complete_graph_fast(const Graph& g, std::span<const Vertex> order, bool recover_fill_edges) {
  const std::size_t n = g.vertex_count();
  if (order.size() != n) throw ContractError("order must be a permutation of the vertices");
  std::vector<char> inserted(n, 0);
  for (Vertex v : order) {
    if (v >= n || inserted[v]) throw ContractError("order must be a permutation of the vertices");
    inserted[v] = 1;
  }
  std::fill(inserted.begin(), inserted.end(), 0);

  PolylogEngine engine;
  Completion out;
  out.steps.reserve(n);
  std::vector<Vertex> nb;
  for (Vertex x : order) {
    nb.clear();
    for (Vertex y : g.neighbours(x)) {
      if (inserted[y]) nb.push_back(y);
    }
    const FastStep s = engine.insert(x, nb);
    inserted[x] = 1;
    out.steps.push_back({nb.size(), 0, 0, s.lca_queries, s.sort_lca_queries});
  }
  out.cotree = engine.release();
  out.cotree.set_leaf_count_tracking(true);
  out.cotree.refresh_leaf_counts();
  out.m_prime = out.cotree.edge_count();
  if (recover_fill_edges) {
    const auto all = out.cotree.edges();
    const auto input = g.edges();
    std::set_difference(all.begin(), all.end(), input.begin(), input.end(), std::back_inserter(out.fill_edges));
  }
  return out;
}

Completion complete_graph_fast(const Graph& g) {
  std::vector<Vertex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), Vertex{0});
  return complete_graph_fast(g, order);
}

}  // namespace cograph

#include "cograph/linear_completion.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "cograph/error.hpp"

namespace cograph {

MarkTable gather_marks(const Cotree& t, std::span<const Vertex> neighbours) {
  MarkTable marks;
  marks.reserve(neighbours.size() * 4);

  // Pass 1: climb from each neighbour leaf until an already discovered node.
  std::vector<NodeId> leaves;
  leaves.reserve(neighbours.size());
  for (Vertex y : neighbours) {
    const NodeId leaf = t.leaf_of(y);
    if (marks.contains(leaf)) throw ContractError("duplicate neighbour " + std::to_string(y));
    leaves.push_back(leaf);
    marks[leaf];
    NodeId cur = leaf;
    for (NodeId p = t.parent(cur); p != kNoNode; cur = p, p = t.parent(p)) {
      const bool seen = marks.contains(p);
      marks[p].nonhollow_children.push_back(cur);
      if (seen) break;
    }
  }

  // Pass 2: a node fires once all of its non-hollow children have reported.
  struct Pending {
    std::uint32_t waiting = 0;
    std::uint32_t neighbours = 0;
    bool all_forced = true;
  };
  std::unordered_map<NodeId, Pending> pending;
  pending.reserve(marks.size());

  std::vector<NodeId> ready;
  ready.reserve(marks.size());
  for (NodeId leaf : leaves) {
    auto& m = marks[leaf];
    m.neighbours_in_subtree = 1;
    m.forced = true;
    ready.push_back(leaf);
  }
  while (!ready.empty()) {
    const NodeId u = ready.back();
    ready.pop_back();
    const NodeId p = t.parent(u);
    if (p == kNoNode) continue;
    auto& mp = marks[p];
    auto [it, fresh] = pending.try_emplace(p);
    auto& acc = it->second;
    if (fresh) acc.waiting = static_cast<std::uint32_t>(mp.nonhollow_count());
    const auto& mu = marks.at(u);
    acc.neighbours += mu.neighbours_in_subtree;
    acc.all_forced = acc.all_forced && mu.forced;
    if (--acc.waiting != 0) continue;

    mp.neighbours_in_subtree = acc.neighbours;
    const bool all_nonhollow = mp.nonhollow_count() == t.child_count(p);
    if (t.kind(p) == NodeKind::Parallel) {
      mp.forced = all_nonhollow;
    } else {
      // A hollow child is never forced.
      mp.forced = all_nonhollow && acc.all_forced;
    }
    ready.push_back(p);
  }
  return marks;
}

MinInsertion find_min_insertion_node(const Cotree& t, const MarkTable& marks) {
  if (!t.leaf_count_tracking()) throw ContractError("linear engine needs leaf counts");
  MinInsertion result;
  const NodeId root = t.root();
  if (!marks.contains(root)) throw ContractError("root must be non-hollow");
  if (marks.at(root).forced) {
    result.root_forced = true;
    return result;
  }

  // |V(u) \ N(x)| for a non-hollow node.
  auto deficiency = [&](NodeId u) -> std::uint64_t {
    return t.leaf_count(u) - marks.at(u).neighbours_in_subtree;
  };

  struct Frame {
    NodeId node;
    std::uint64_t cost_above;
  };
  std::vector<Frame> stack{{root, 0}};
  bool have_best = false;
  while (!stack.empty()) {
    const auto [u, above] = stack.back();
    stack.pop_back();
    ++result.nodes_visited;
    const Mark& mu = marks.at(u);
    const bool series = t.kind(u) == NodeKind::Series;

    bool is_candidate;
    if (series) {
      is_candidate = t.child_count(u) > mu.nonhollow_count();
    } else {
      // No eligible non-forced child: either several non-hollow children
      // (none of them eligible) or a single one that is forced.
      is_candidate = mu.nonhollow_count() >= 2 || marks.at(mu.nonhollow_children.front()).forced;
    }
    if (is_candidate) {
      std::uint64_t cost = above;
      for (NodeId c : mu.nonhollow_children) cost += deficiency(c);
      result.candidates.push_back({u, cost});
      if (!have_best || cost < result.cost) {
        have_best = true;
        result.node = u;
        result.cost = cost;
      }
    }

    if (!series && mu.nonhollow_count() != 1) continue;
    const std::uint64_t du = series ? deficiency(u) : 0;
    for (auto it = mu.nonhollow_children.rbegin(); it != mu.nonhollow_children.rend(); ++it) {
      const NodeId c = *it;
      if (marks.at(c).forced) continue;
      stack.push_back({c, series ? above + du - deficiency(c) : above});
    }
  }
  if (!have_best) throw std::logic_error("no completion-minimal insertion node found");
  return result;
}

namespace {

void collect_unmarked_leaves(const Cotree& t, NodeId u, const MarkTable& marks, std::vector<Vertex>& out) {
  std::vector<NodeId> stack{u};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (t.is_leaf(v)) {
      if (!marks.contains(v)) out.push_back(t.node(v).vertex);
      continue;
    }
    for (NodeId c : t.children(v)) stack.push_back(c);
  }
}

void check_neighbours(const Cotree& t, Vertex x, std::span<const Vertex> neighbours) {
  if (t.contains(x)) throw ContractError("vertex " + std::to_string(x) + " already inserted");
  for (Vertex y : neighbours) t.leaf_of(y);
}

}  // namespace

StepResult complete_step(Cotree& t, Vertex x, std::span<const Vertex> neighbours) {
  check_neighbours(t, x, neighbours);
  StepResult r;
  r.completed_neighbourhood.assign(neighbours.begin(), neighbours.end());
  std::sort(r.completed_neighbourhood.begin(), r.completed_neighbourhood.end());
  if (std::adjacent_find(r.completed_neighbourhood.begin(), r.completed_neighbourhood.end()) !=
      r.completed_neighbourhood.end()) {
    throw ContractError("duplicate neighbour");
  }
  if (neighbours.empty() || neighbours.size() == t.vertex_count()) {
    t.attach_uniform(x, !neighbours.empty());
    return r;
  }

  const MarkTable marks = gather_marks(t, neighbours);
  const MinInsertion choice = find_min_insertion_node(t, marks);
  r.nodes_touched = marks.size() + choice.nodes_visited;
  r.candidates_scanned = choice.candidates.size();

  if (choice.root_forced) {
    collect_unmarked_leaves(t, t.root(), marks, r.fill_vertices);
    t.attach_uniform(x, true);
  } else {
    const NodeId u = choice.node;
    // Outside V(u): everything hanging off a series ancestor is filled.
    for (NodeId a = u, p = t.parent(u); p != kNoNode; a = p, p = t.parent(p)) {
      if (t.kind(p) != NodeKind::Series) continue;
      for (NodeId s : t.children(p)) {
        if (s != a) collect_unmarked_leaves(t, s, marks, r.fill_vertices);
      }
    }
    const auto& nonhollow = marks.at(u).nonhollow_children;
    for (NodeId c : nonhollow) collect_unmarked_leaves(t, c, marks, r.fill_vertices);
    if (r.fill_vertices.size() != choice.cost) throw std::logic_error("anchored completion cost mismatch");
    r.insertion_node = u;
    t.insert_leaf(u, nonhollow, x);
  }
  r.cost = r.fill_vertices.size();
  std::sort(r.fill_vertices.begin(), r.fill_vertices.end());
  r.completed_neighbourhood.insert(r.completed_neighbourhood.end(), r.fill_vertices.begin(), r.fill_vertices.end());
  std::sort(r.completed_neighbourhood.begin(), r.completed_neighbourhood.end());
  return r;
}

Completion complete_graph(const Graph& g, std::span<const Vertex> order) {
  const std::size_t n = g.vertex_count();
  if (order.size() != n) throw ContractError("order must be a permutation of the vertices");
  std::vector<char> inserted(n, 0);
  for (Vertex v : order) {
    if (v >= n || inserted[v]) throw ContractError("order must be a permutation of the vertices");
    inserted[v] = 1;
  }
  std::fill(inserted.begin(), inserted.end(), 0);

  Completion out;
  out.per_step_costs.reserve(n);
  out.steps.reserve(n);
  std::vector<Vertex> nb;
  for (Vertex x : order) {
    nb.clear();
    for (Vertex y : g.neighbours(x)) {
      if (inserted[y]) nb.push_back(y);
    }
    StepResult r = complete_step(out.cotree, x, nb);
    inserted[x] = 1;
    for (Vertex y : r.fill_vertices) out.fill_edges.push_back({std::min(x, y), std::max(x, y)});
    out.per_step_costs.push_back(r.cost);
    out.steps.push_back({nb.size(), r.completed_neighbourhood.size(), r.nodes_touched, 0, 0});
  }
  std::sort(out.fill_edges.begin(), out.fill_edges.end());
  out.m_prime = g.edge_count() + out.fill_edges.size();
  return out;
}

Completion complete_graph(const Graph& g) {
  std::vector<Vertex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), Vertex{0});
  return complete_graph(g, order);
}

}  // namespace cograph

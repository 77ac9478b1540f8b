#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "cograph/completion.hpp"
#include "cograph/cotree.hpp"
#include "cograph/graph.hpp"

namespace cograph {

// What one insertion step knows about a non-hollow node.
struct Mark {
  std::vector<NodeId> nonhollow_children;
  std::uint32_t neighbours_in_subtree = 0;  // |V(u) ∩ N(x)|
  bool forced = false;                      // completion-forced

  std::size_t nonhollow_count() const noexcept { return nonhollow_children.size(); }
};

// Sparse per-step table; a node is present iff it is non-hollow.
class MarkTable {
 public:
  bool contains(NodeId u) const { return marks_.contains(u); }
  const Mark& at(NodeId u) const { return marks_.at(u); }
  Mark& operator[](NodeId u) { return marks_[u]; }
  std::size_t size() const noexcept { return marks_.size(); }
  auto begin() const { return marks_.begin(); }
  auto end() const { return marks_.end(); }
  void reserve(std::size_t n) { marks_.reserve(n); }

 private:
  std::unordered_map<NodeId, Mark> marks_;
};

// Two bottom-up passes from the leaves of N(x): the first discovers non-hollow
// nodes and their non-hollow children, the second propagates neighbour counts
// and forced flags once every non-hollow child has reported.
MarkTable gather_marks(const Cotree& t, std::span<const Vertex> neighbours);

struct Candidate {
  NodeId node;
  std::uint64_t cost;
};

struct MinInsertion {
  bool root_forced = false;  // the only minimal completion fills every vertex
  NodeId node = kNoNode;
  std::uint64_t cost = 0;
  std::vector<Candidate> candidates;  // every completion-minimal insertion node, DFS order
  std::size_t nodes_visited = 0;
};

// Depth-first search over eligible, non-hollow, non-forced nodes. Keeps the
// first candidate of minimum cost.
MinInsertion find_min_insertion_node(const Cotree& t, const MarkTable& marks);

struct StepResult {
  NodeId insertion_node = kNoNode;  // kNoNode when x was attached uniformly
  std::vector<Vertex> fill_vertices;
  std::vector<Vertex> completed_neighbourhood;  // N'(x), sorted
  std::uint64_t cost = 0;
  std::size_t candidates_scanned = 0;
  std::size_t nodes_touched = 0;
};

// Inserts x with the minimum-cost minimal completion of its neighbourhood.
// The cotree must track leaf counts.
StepResult complete_step(Cotree& t, Vertex x, std::span<const Vertex> neighbours);

// Incremental driver: inserts vertices in `order`, each with its neighbours
// among the vertices inserted before it.
Completion complete_graph(const Graph& g, std::span<const Vertex> order);
Completion complete_graph(const Graph& g);

}  // namespace cograph

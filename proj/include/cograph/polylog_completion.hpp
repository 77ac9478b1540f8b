#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cograph/completion.hpp"
#include "cograph/cotree.hpp"
#include "cograph/dynamic_forest.hpp"
#include "cograph/graph.hpp"
#include "cograph/order_list.hpp"

namespace cograph {

// Keeps a dynamic forest and one order list per node in lockstep with a
// cotree. Forest handles are cotree node ids.
class StructureMirror final : public CotreeObserver {
 public:
  StructureMirror() = default;
  // Mirrors an existing tree; attach with t.set_observer(&mirror) afterwards.
  explicit StructureMirror(const Cotree& t);

  void node_created(NodeId id) override;
  void child_attached(NodeId parent, NodeId child, NodeId after) override;
  void child_detached(NodeId parent, NodeId child) override;

  DynamicForest& forest() noexcept { return forest_; }
  const OrderList& children_order(NodeId u) const { return orders_.at(u); }
  OrderList::Handle order_handle(NodeId u) const { return handles_.at(u); }
  // a, b: distinct children of the same node.
  bool child_precedes(NodeId parent, NodeId a, NodeId b) const {
    return orders_.at(parent).precedes(handles_.at(a), handles_.at(b));
  }

 private:
  void grow(std::size_t n);

  DynamicForest forest_;
  std::vector<OrderList> orders_;
  std::vector<OrderList::Handle> handles_;
};

// Sorts neighbours by the leaf order of a depth-first traversal that follows
// stored child order. Each comparison costs one lca, two
// next_step_to_descendant queries and one order query.
std::vector<Vertex> sort_by_factorizing_permutation(const Cotree& t, std::span<const Vertex> neighbours,
                                                    StructureMirror& mirror, std::size_t* lca_queries = nullptr);

struct ExtractedNode {
  NodeId node = kNoNode;
  NodeKind kind = NodeKind::Leaf;
  std::uint32_t parent = kNone;
  std::vector<std::uint32_t> children;  // left to right

  static constexpr std::uint32_t kNone = 0xffffffffu;
  std::size_t extracted_child_count() const noexcept { return children.size(); }
};

// Tree on the neighbour leaves and their pairwise lcas; parent relation is
// the transitive reduction of cotree ancestry on that node set.
struct ExtractedTree {
  std::vector<ExtractedNode> nodes;
  std::uint32_t root = ExtractedNode::kNone;
  std::size_t lca_queries = 0;
  std::unordered_map<NodeId, std::uint32_t> index;

  bool contains(NodeId u) const { return index.contains(u); }
  const ExtractedNode& of(NodeId u) const { return nodes[index.at(u)]; }
};

// Left-to-right construction over neighbours sorted by the factorizing
// permutation; keeps the rightmost branch on a stack.
ExtractedTree build_extracted_tree(const Cotree& t, std::span<const Vertex> sorted_neighbours,
                                   StructureMirror& mirror);

struct CandidateSets {
  std::vector<NodeId> p_max;    // maximal parallel lcas of neighbours
  std::vector<NodeId> w_prime;  // p_max plus neighbours outside them, left to right
  std::vector<NodeId> w_set;    // ancestor-minimal lowest non-forced ancestors
};

struct Selection {
  bool root_forced = false;
  NodeId node = kNoNode;
  std::vector<NodeId> nonhollow_children;
  CandidateSets sets;
  // Every completion-forced test performed, as (node, forced).
  std::vector<std::pair<NodeId, bool>> forced_evaluations;
};

Selection select_insertion_node(const ExtractedTree& xt, const Cotree& t, StructureMirror& mirror);

struct FastStep {
  enum class Kind { AttachedHollow, AttachedFull, Inserted };
  Kind kind = Kind::AttachedHollow;
  NodeId insertion_node = kNoNode;
  std::vector<NodeId> nonhollow_children;
  std::size_t lca_queries = 0;       // extracted-tree construction
  std::size_t sort_lca_queries = 0;  // factorizing-permutation sort
  std::size_t extracted_size = 0;
};

// Owns a cotree (without leaf counts) plus its mirror.
class PolylogEngine {
 public:
  PolylogEngine();
  explicit PolylogEngine(Cotree t);
  PolylogEngine(const PolylogEngine&) = delete;
  PolylogEngine& operator=(const PolylogEngine&) = delete;
  ~PolylogEngine();

  // Inserts x with the completion anchored at an arbitrary completion-minimal
  // insertion node (the one reached from the leftmost W' element).
  FastStep insert(Vertex x, std::span<const Vertex> neighbours);

  // Cross-checks each selection against gather_marks: the chosen node must be
  // a completion-minimal insertion node with the same non-hollow children.
  void set_self_check(bool on) noexcept { self_check_ = on; }

  const Cotree& cotree() const noexcept { return tree_; }
  StructureMirror& mirror() noexcept { return mirror_; }
  // Detaches the mirror and hands the cotree over.
  Cotree release();

 private:
  void verify_selection(std::span<const Vertex> neighbours, const Selection& sel) const;

  Cotree tree_;
  StructureMirror mirror_;
  bool self_check_ = false;
};

Completion complete_graph_fast(const Graph& g, std::span<const Vertex> order, bool recover_fill_edges = true);
Completion complete_graph_fast(const Graph& g);

}  // namespace cograph

#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cograph/graph.hpp"

namespace cograph {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class NodeKind : std::uint8_t { Series, Parallel, Leaf };

struct CotreeNode {
  NodeKind kind = NodeKind::Leaf;
  Vertex vertex = 0;  // leaves only
  NodeId parent = kNoNode;
  NodeId first_child = kNoNode;
  NodeId last_child = kNoNode;
  NodeId prev_sibling = kNoNode;
  NodeId next_sibling = kNoNode;
  std::uint32_t child_count = 0;
  std::uint32_t leaf_count = 1;
};

// Receives every structural change made to a Cotree, in order. Used to keep
// auxiliary structures (dynamic forest, child-order lists) in lockstep.
class CotreeObserver {
 public:
  virtual ~CotreeObserver() = default;
  virtual void node_created(NodeId id) = 0;
  // child was placed right after `after` (kNoNode: at the front) in parent's list.
  virtual void child_attached(NodeId parent, NodeId child, NodeId after) = 0;
  virtual void child_detached(NodeId parent, NodeId child) = 0;
};

struct CotreeViolation {
  NodeId node;
  std::string message;
};

class Cotree {
 public:
  class ChildIterator {
   public:
    using value_type = NodeId;
    using difference_type = std::ptrdiff_t;
    ChildIterator() = default;
    ChildIterator(const Cotree* t, NodeId at) : tree_(t), at_(at) {}
    NodeId operator*() const { return at_; }
    ChildIterator& operator++() {
      at_ = tree_->nodes_[at_].next_sibling;
      return *this;
    }
    ChildIterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const ChildIterator& o) const { return at_ == o.at_; }

   private:
    const Cotree* tree_ = nullptr;
    NodeId at_ = kNoNode;
  };

  struct ChildRange {
    ChildIterator b, e;
    ChildIterator begin() const { return b; }
    ChildIterator end() const { return e; }
  };

  Cotree() = default;

  bool empty() const noexcept { return root_ == kNoNode; }
  NodeId root() const noexcept { return root_; }
  // Number of leaves (vertices) currently in the tree.
  std::size_t vertex_count() const noexcept { return vertex_total_; }
  // Arena size; node ids are < node_capacity().
  std::size_t node_capacity() const noexcept { return nodes_.size(); }

  const CotreeNode& node(NodeId u) const { return nodes_.at(u); }
  NodeKind kind(NodeId u) const { return nodes_[u].kind; }
  NodeId parent(NodeId u) const { return nodes_[u].parent; }
  std::uint32_t child_count(NodeId u) const { return nodes_[u].child_count; }
  // Only meaningful while leaf-count tracking is on, or after refresh_leaf_counts().
  std::uint32_t leaf_count(NodeId u) const { return nodes_[u].leaf_count; }
  bool is_leaf(NodeId u) const { return nodes_[u].kind == NodeKind::Leaf; }
  ChildRange children(NodeId u) const {
    return {ChildIterator(this, nodes_[u].first_child), ChildIterator(this, kNoNode)};
  }

  bool contains(Vertex x) const noexcept {
    return x < leaf_of_vertex_.size() && leaf_of_vertex_[x] != kNoNode;
  }
  // Throws LookupError for absent vertices.
  NodeId leaf_of(Vertex x) const;
  std::vector<Vertex> vertices() const;

  // --- construction (bottom-up; canonicity is checked by validate()) ---
  NodeId new_leaf(Vertex x);
  NodeId new_internal(NodeKind kind, std::span<const NodeId> children);
  void set_root(NodeId u);

  // --- queries ---
  // Naive parent-walk lca.
  NodeId lca(NodeId a, NodeId b) const;
  std::size_t depth(NodeId u) const;
  bool is_ancestor(NodeId anc, NodeId u) const;
  // True iff the lca of leaves x and y is a series node.
  bool adjacent(Vertex x, Vertex y) const;
  // Edge count of the represented cograph; computes subtree sizes itself.
  std::uint64_t edge_count() const;
  // All edges of the represented cograph, u < v, sorted.
  std::vector<Edge> edges() const;
  // Leaves of T_u in depth-first order respecting stored child order.
  std::vector<Vertex> leaves_under(NodeId u) const;
  // Factorizing permutation of the whole tree.
  std::vector<Vertex> leaf_order() const;

  // --- mutation ---
  // Adds x adjacent to every vertex (full) or to none. Bootstraps the empty tree.
  NodeId attach_uniform(Vertex x, bool full);
  // Inserts x below the insertion node w so that, inside V(w), x is adjacent
  // exactly to the leaves of `nonhollow`. Returns the new leaf.
  NodeId insert_leaf(NodeId w, std::span<const NodeId> nonhollow, Vertex x);

  void set_leaf_count_tracking(bool on) noexcept { track_leaf_counts_ = on; }
  bool leaf_count_tracking() const noexcept { return track_leaf_counts_; }
  void refresh_leaf_counts();

  void set_observer(CotreeObserver* obs) noexcept { observer_ = obs; }

  std::optional<CotreeViolation> validate() const;

  // "S(P(0,2),P(1,3))" form, children in stored order.
  std::string serialize() const;
  // Children sorted by their own canonical text: equal strings iff equal cographs.
  std::string canonical_string() const;
  static Cotree deserialize(std::string_view text);

 private:
  NodeId allocate(NodeKind kind);
  void attach_after(NodeId parent, NodeId child, NodeId after);
  void append_child(NodeId parent, NodeId child) { attach_after(parent, child, nodes_[parent].last_child); }
  // Returns the previous sibling of child (kNoNode when it was first).
  NodeId detach(NodeId child);
  void bump_ancestors(NodeId from, std::int64_t delta);
  std::string text_of(NodeId u, bool canonical) const;

  std::vector<CotreeNode> nodes_;
  std::vector<NodeId> leaf_of_vertex_;
  NodeId root_ = kNoNode;
  std::size_t vertex_total_ = 0;
  bool track_leaf_counts_ = true;
  CotreeObserver* observer_ = nullptr;
};

// The cograph a cotree represents, on vertex ids 0..n-1.
Graph to_graph(const Cotree& t, std::size_t n);

// Canonical cotree on vertices 0..n-1 with random shape and labels; internal
// nodes get 2 to max_arity children. Deterministic given seed.
Cotree generate_random_cotree(std::size_t n, std::uint64_t seed, std::size_t max_arity = 4);

}  // namespace cograph

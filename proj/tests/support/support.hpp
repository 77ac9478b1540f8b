#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cograph/cotree.hpp"
#include "cograph/graph.hpp"

namespace cograph::testing {

// One representative per isomorphism class of graphs on n <= 8 vertices.
std::vector<Graph> nonisomorphic_graphs(std::size_t n);

// Every labelled graph on n vertices; n <= 7.
Graph labelled_graph(std::size_t n, std::uint32_t code);

Graph random_graph(std::size_t n, double p, std::mt19937_64& rng);

bool contains_all_edges(const Graph& big, const Graph& small);

// Cograph H_i on the inserted vertices, renumbered by insertion index, and
// the same renumbering for a neighbour list.
struct DenseView {
  Graph graph;
  std::vector<Vertex> dense_of;  // original id -> dense id
};
DenseView dense_view(const Cotree& t, std::span<const Vertex> inserted);

// Parent-array forest; the reference for DynamicForest.
class NaiveForest {
 public:
  static constexpr std::uint32_t kNone = 0xffffffffu;
  explicit NaiveForest(std::size_t n) : parent_(n, kNone) {}

  void link(std::uint32_t parent, std::uint32_t child) { parent_[child] = parent; }
  void cut(std::uint32_t node) { parent_[node] = kNone; }
  std::uint32_t parent_of(std::uint32_t u) const { return parent_[u]; }
  std::uint32_t find_root(std::uint32_t u) const;
  std::size_t depth(std::uint32_t u) const;
  void evert(std::uint32_t u);
  std::uint32_t lca(std::uint32_t u, std::uint32_t v) const;
  bool is_ancestor(std::uint32_t anc, std::uint32_t u) const;
  std::uint32_t next_step_to_descendant(std::uint32_t u, std::uint32_t v) const;

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace cograph::testing

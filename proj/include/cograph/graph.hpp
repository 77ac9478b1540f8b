#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cograph {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 0..n-1. Neighbour lists are kept sorted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adjacency_(n) {}

  // Throws ValidationError on self-loops and duplicate edges.
  void add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  std::span<const Vertex> neighbours(Vertex u) const { return adjacency_.at(u); }
  std::size_t degree(Vertex u) const { return adjacency_.at(u).size(); }

  // Edges with u < v, sorted.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edges_ = 0;
};

// Graph plus the external label of every dense vertex id.
struct LabelledGraph {
  Graph graph;
  std::vector<std::string> labels;

  // Dense id of an external label; throws LookupError.
  Vertex id_of(std::string_view label) const;
};

// Edge-list text: one "u v" pair per line, '#' comments, blank lines ignored.
// When every token is a non-negative integer, vertices are renumbered by
// increasing numeric value; otherwise by first appearance.
LabelledGraph parse_edge_list(std::istream& in);
LabelledGraph parse_edge_list(std::string_view text);
LabelledGraph read_edge_list_file(const std::string& path);

// Edge pairs in the same line format, resolved against an existing labelling.
std::vector<Edge> parse_edge_pairs(std::istream& in, const LabelledGraph& labels);

std::string serialize_edge_list(const Graph& g);

// Configuration model with rejection of loops and multi-edges, at most 100 attempts.
Graph generate_random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

// Uniform graph with exactly m edges.
Graph generate_gnm(std::size_t n, std::size_t m, std::uint64_t seed);

// Relabels g so that vertex v becomes perm[v].
Graph permute(const Graph& g, std::span<const Vertex> perm);

}  // namespace cograph

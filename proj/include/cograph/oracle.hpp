#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cograph/cotree.hpp"
#include "cograph/graph.hpp"

// Brute-force reference implementations. Slow on purpose; used by tests and
// by the verify subcommand.
namespace cograph::oracle {

// Literal scan over all 4-vertex subsets.
bool has_induced_p4_exhaustive(const Graph& g);
// Same answer via edge-centred bitset scan.
bool is_cograph_naive(const Graph& g);

// Components / co-components recursion. nullopt when g is not a cograph.
std::optional<Cotree> build_cotree_naive(const Graph& g);

struct StepBruteForce {
  std::uint64_t min_cost = 0;
  // Every inclusion-minimal M ⊆ V \ N(x) with H + x a cograph, each sorted.
  std::vector<std::vector<Vertex>> minimal_sets;
};

// h must be a cograph on at most 63 vertices with |V \ N(x)| <= 20. The new
// vertex gets id h.vertex_count().
StepBruteForce min_step_completion_bruteforce(const Graph& h, std::span<const Vertex> neighbours);

enum class Minimality { Minimal, NotMinimal, Skipped };

inline constexpr std::size_t kMinimalityGuard = 16;

// G+F is a cograph and no proper subset of F gives one. Skipped when |F| > guard.
// Throws ValidationError when F contains an edge of G, a loop or a repeat.
Minimality is_minimal_completion(const Graph& g, std::span<const Edge> fill,
                                 std::size_t guard = kMinimalityGuard);

Graph with_edges(const Graph& g, std::span<const Edge> extra);

// Slow predicates over a cotree, straight from the leaf sets.
bool is_hollow(const Cotree& t, NodeId u, std::span<const Vertex> neighbours);
bool is_full(const Cotree& t, NodeId u, std::span<const Vertex> neighbours);
bool is_eligible(const Cotree& t, NodeId u, std::span<const Vertex> neighbours);
bool is_forced(const Cotree& t, NodeId u, std::span<const Vertex> neighbours);
// Vertices added to N(x) by the completion anchored at u, sorted.
std::vector<Vertex> anchored_completion(const Cotree& t, NodeId u, std::span<const Vertex> neighbours);
// u is the insertion node of some inclusion-minimal completion, decided by
// enumerating all completions of the step.
bool is_completion_minimal_insertion_node(const Cotree& t, NodeId u, std::span<const Vertex> neighbours);

}  // namespace cograph::oracle

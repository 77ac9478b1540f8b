#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cograph/completion.hpp"
#include "cograph/graph.hpp"

namespace cograph {

enum class Algorithm { Linear, Polylog };

struct RunStats {
  std::string algo;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t m_prime = 0;
  std::uint64_t fill_count = 0;
  std::vector<std::uint64_t> per_step_costs;
  std::uint64_t nodes_touched = 0;
  std::uint64_t lca_queries = 0;
  double wall_time_ms = 0;
};

// Runs one engine and fills in the stats.
Completion run_completion(const Graph& g, std::span<const Vertex> order, Algorithm algo, RunStats& stats);

// Insertion order: identity, or a seeded Fisher-Yates shuffle.
std::vector<Vertex> make_order(std::size_t n, bool shuffle, std::uint64_t seed);

// key=value lines.
std::string format_stats(const RunStats& s);

// Exit codes: 0 ok, 1 domain or I/O failure, 2 usage. verify also returns
// kExitSkipped when the fill set is beyond the oracle guard.
inline constexpr int kExitSkipped = 77;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cograph

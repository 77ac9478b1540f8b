#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cograph/cotree.hpp"
#include "cograph/graph.hpp"

namespace cograph {

// Instrumentation for one incremental step.
struct StepCounters {
  std::size_t degree = 0;            // d: neighbours among already inserted vertices
  std::size_t completed_degree = 0;  // d': after completion (linear engine only)
  std::size_t nodes_touched = 0;     // marks domain + search visits (linear engine)
  std::size_t lca_queries = 0;       // extracted-tree construction (polylog engine)
  std::size_t sort_lca_queries = 0;  // factorizing-permutation sort (polylog engine)
};

struct Completion {
  Cotree cotree;
  std::vector<Edge> fill_edges;             // u < v, sorted
  std::vector<std::uint64_t> per_step_costs;  // empty for the polylog engine
  std::vector<StepCounters> steps;
  std::uint64_t m_prime = 0;
};

}  // namespace cograph

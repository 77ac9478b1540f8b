#include <algorithm>
#include <random>

#include "cograph/error.hpp"
#include "cograph/linear_completion.hpp"
#include "cograph/oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cograph;

namespace {

Cotree tree(std::string_view s) { return Cotree::deserialize(s); }

std::vector<NodeId> candidate_nodes(const MinInsertion& r) {
  std::vector<NodeId> out;
  for (const auto& c : r.candidates) out.push_back(c.node);
  return out;
}

std::uint64_t cost_of(const MinInsertion& r, NodeId u) {
  for (const auto& c : r.candidates)
    if (c.node == u) return c.cost;
  FAIL("not a candidate");
  return 0;
}

// Runs complete_step on g in the given order, checking each step against the
// brute-force minimum and the slow predicates.
void check_steps(const Graph& g, std::span<const Vertex> order) {
  Cotree t;
  std::vector<Vertex> inserted;
  std::vector<char> seen(g.vertex_count(), 0);
  for (Vertex x : order) {
    std::vector<Vertex> nb;
    for (Vertex y : g.neighbours(x))
      if (seen[y]) nb.push_back(y);
    const auto view = testing::dense_view(t, inserted);
    std::vector<Vertex> dense_nb;
    for (Vertex y : nb) dense_nb.push_back(view.dense_of[y]);
    const auto bf = oracle::min_step_completion_bruteforce(view.graph, dense_nb);

    const StepResult r = complete_step(t, x, nb);
    REQUIRE(r.cost == bf.min_cost);
    REQUIRE(r.cost == r.fill_vertices.size());
    std::vector<Vertex> dense_fill;
    for (Vertex y : r.fill_vertices) dense_fill.push_back(view.dense_of[y]);
    std::sort(dense_fill.begin(), dense_fill.end());
    REQUIRE(std::binary_search(bf.minimal_sets.begin(), bf.minimal_sets.end(), dense_fill));
    REQUIRE_FALSE(t.validate());
    inserted.push_back(x);
    seen[x] = 1;
  }
}

}  // namespace

TEST_CASE("gather_marks: C4 with N(x)={0}") {
  Cotree t = tree("S(P(0,2),P(1,3))");
  const Vertex nb[] = {0};
  const MarkTable m = gather_marks(t, nb);
  const NodeId leaf0 = t.leaf_of(0), p02 = t.parent(leaf0);
  CHECK(m.size() == 3);
  CHECK(m.contains(leaf0));
  CHECK(m.contains(p02));
  CHECK(m.contains(t.root()));
  CHECK(m.at(leaf0).forced);
  CHECK_FALSE(m.at(p02).forced);
  CHECK_FALSE(m.at(t.root()).forced);
  CHECK(m.at(t.root()).neighbours_in_subtree == 1);
  CHECK(m.at(t.root()).nonhollow_children == std::vector<NodeId>{p02});
}

TEST_CASE("gather_marks: full roots are forced") {
  Cotree s = tree("S(0,1)");
  const Vertex both[] = {0, 1};
  const MarkTable ms = gather_marks(s, both);
  CHECK(ms.size() == 3);
  for (const auto& [u, mark] : ms) CHECK(mark.forced);
  Cotree p = tree("P(0,1)");
  CHECK(gather_marks(p, both).at(p.root()).forced);
}

TEST_CASE("gather_marks: errors") {
  Cotree t = tree("S(0,1)");
  const Vertex missing[] = {5};
  CHECK_THROWS_AS(gather_marks(t, missing), LookupError);
  const Vertex dup[] = {0, 0};
  CHECK_THROWS_AS(gather_marks(t, dup), ContractError);
}

TEST_CASE("gather_marks agrees with the slow predicates") {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t n = 2 + seed % 30;
    Cotree t = generate_random_cotree(n, seed);
    std::vector<Vertex> nb;
    for (Vertex v = 0; v < n; ++v)
      if (rng() % 3 == 0) nb.push_back(v);
    if (nb.empty()) nb.push_back(0);
    const MarkTable m = gather_marks(t, nb);
    for (NodeId u = 0; u < t.node_capacity(); ++u) {
      const bool hollow = oracle::is_hollow(t, u, nb);
      REQUIRE(m.contains(u) == !hollow);
      if (hollow) continue;
      REQUIRE(m.at(u).forced == oracle::is_forced(t, u, nb));
      std::size_t in = 0;
      for (Vertex v : t.leaves_under(u)) in += std::count(nb.begin(), nb.end(), v);
      REQUIRE(m.at(u).neighbours_in_subtree == in);
    }
  }
}

TEST_CASE("find_min_insertion_node: C4 with N(x)={0,1}") {
  Cotree t = tree("S(P(0,2),P(1,3))");
  const Vertex nb[] = {0, 1};
  const auto r = find_min_insertion_node(t, gather_marks(t, nb));
  const NodeId p02 = t.parent(t.leaf_of(0)), p13 = t.parent(t.leaf_of(1));
  auto cands = candidate_nodes(r);
  std::sort(cands.begin(), cands.end());
  std::vector<NodeId> expect{p02, p13};
  std::sort(expect.begin(), expect.end());
  CHECK(cands == expect);
  CHECK(cost_of(r, p02) == 1);
  CHECK(cost_of(r, p13) == 1);
  CHECK(r.cost == 1);
  CHECK_FALSE(r.root_forced);
}

TEST_CASE("find_min_insertion_node: S(b,P(a,c)) with N(x)={c}") {
  Cotree t = tree("S(1,P(0,2))");
  const Vertex nb[] = {2};
  const auto r = find_min_insertion_node(t, gather_marks(t, nb));
  const NodeId pac = t.parent(t.leaf_of(0));
  CHECK(candidate_nodes(r) == std::vector<NodeId>{t.root(), pac});
  CHECK(cost_of(r, t.root()) == 1);
  CHECK(cost_of(r, pac) == 1);
  CHECK(r.node == t.root());
  CHECK(r.cost == 1);
}

TEST_CASE("find_min_insertion_node: C4 with N(x)={2}") {
  Cotree t = tree("S(P(0,2),P(1,3))");
  const Vertex nb[] = {2};
  const auto r = find_min_insertion_node(t, gather_marks(t, nb));
  CHECK(cost_of(r, t.root()) == 1);
  CHECK(cost_of(r, t.parent(t.leaf_of(2))) == 2);
  CHECK(r.node == t.root());
  CHECK(r.cost == 1);
}

TEST_CASE("find_min_insertion_node needs leaf counts") {
  Cotree t = tree("S(P(0,2),P(1,3))");
  t.set_leaf_count_tracking(false);
  const Vertex nb[] = {2};
  CHECK_THROWS_AS(find_min_insertion_node(t, gather_marks(t, nb)), ContractError);
}

TEST_CASE("complete_step: C4 with N(x)={2} fills vertex 0") {
  Cotree t = tree("S(P(0,2),P(1,3))");
  const Vertex nb[] = {2};
  const auto r = complete_step(t, 4, nb);
  CHECK(r.fill_vertices == std::vector<Vertex>{0});
  CHECK(r.completed_neighbourhood == std::vector<Vertex>{0, 2});
  CHECK(r.cost == 1);
  CHECK_FALSE(t.validate());
  CHECK(oracle::is_cograph_naive(to_graph(t, 5)));
}

TEST_CASE("complete_step: uniform neighbourhoods") {
  Cotree t = tree("S(P(0,2),P(1,3))");
  const Vertex all[] = {0, 1, 2, 3};
  auto r = complete_step(t, 4, all);
  CHECK(r.cost == 0);
  CHECK(r.completed_neighbourhood == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(r.insertion_node == kNoNode);
  r = complete_step(t, 5, std::span<const Vertex>{});
  CHECK(r.cost == 0);
  CHECK(t.serialize() == "P(S(P(0,2),P(1,3),4),5)");
}

TEST_CASE("complete_step: root forced fills everything") {
  // Parallel root, every child non-hollow, none full.
  Cotree t = tree("P(S(0,1),S(2,3))");
  const Vertex nb[] = {0, 2};
  const auto r = complete_step(t, 4, nb);
  CHECK(r.fill_vertices == std::vector<Vertex>{1, 3});
  CHECK(r.completed_neighbourhood == std::vector<Vertex>{0, 1, 2, 3});
  CHECK_FALSE(t.validate());
}

TEST_CASE("complete_step: contract errors") {
  Cotree t = tree("S(0,1)");
  const Vertex nb[] = {0};
  CHECK_THROWS_AS(complete_step(t, 1, nb), ContractError);
  const Vertex missing[] = {7};
  CHECK_THROWS_AS(complete_step(t, 2, missing), LookupError);
}

TEST_CASE("complete_graph: P4 in order a,b,c,d") {
  auto lg = parse_edge_list("a b\nb c\nc d\n");
  const auto c = complete_graph(lg.graph);
  CHECK(c.per_step_costs == std::vector<std::uint64_t>{0, 0, 0, 1});
  CHECK(c.fill_edges.size() == 1);
  const Graph h = to_graph(c.cotree, 4);
  const bool c4 = h == parse_edge_list("0 1\n1 2\n2 3\n3 0\n").graph;
  const bool paw = h.edge_count() == 4 && oracle::is_cograph_naive(h) && !c4;
  CHECK((c4 || paw));
  CHECK(c.m_prime == 4);
}

TEST_CASE("complete_graph: C5 needs two fill edges") {
  auto lg = parse_edge_list("0 1\n1 2\n2 3\n3 4\n4 0\n");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::vector<Vertex> order{0, 1, 2, 3, 4};
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    const auto c = complete_graph(lg.graph, order);
    CHECK(c.fill_edges.size() == 2);
    CHECK(oracle::is_minimal_completion(lg.graph, c.fill_edges) == oracle::Minimality::Minimal);
  }
}

TEST_CASE("complete_graph: edgeless and complete graphs") {
  Graph empty(5);
  auto c = complete_graph(empty);
  CHECK(c.fill_edges.empty());
  CHECK(c.cotree.serialize() == "P(0,1,2,3,4)");
  Graph k(5);
  for (Vertex u = 0; u < 5; ++u)
    for (Vertex v = u + 1; v < 5; ++v) k.add_edge(u, v);
  c = complete_graph(k);
  CHECK(c.fill_edges.empty());
  CHECK(c.cotree.serialize() == "S(0,1,2,3,4)");
}

TEST_CASE("complete_graph: order must be a permutation") {
  Graph g(3);
  const Vertex bad[] = {0, 0, 1};
  CHECK_THROWS_AS(complete_graph(g, bad), ContractError);
  const Vertex short_order[] = {0, 1};
  CHECK_THROWS_AS(complete_graph(g, short_order), ContractError);
}

TEST_CASE("candidates are exactly the completion-minimal insertion nodes") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t n = 3 + seed % 10;
    Cotree t = generate_random_cotree(n, seed);
    std::vector<Vertex> nb;
    for (Vertex v = 0; v < n; ++v)
      if (rng() % 2) nb.push_back(v);
    if (nb.empty() || nb.size() == n) continue;
    const MarkTable m = gather_marks(t, nb);
    if (m.at(t.root()).forced) continue;
    const auto r = find_min_insertion_node(t, m);
    auto got = candidate_nodes(r);
    std::sort(got.begin(), got.end());
    std::vector<NodeId> expect;
    for (NodeId u = 0; u < t.node_capacity(); ++u)
      if (oracle::is_completion_minimal_insertion_node(t, u, nb)) expect.push_back(u);
    REQUIRE(got == expect);
    for (const auto& c : r.candidates) REQUIRE(c.cost == oracle::anchored_completion(t, c.node, nb).size());
  }
}

TEST_CASE("per-step minimum: every graph with n <= 8") {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (const Graph& g : testing::nonisomorphic_graphs(n)) {
      std::vector<Vertex> order(n);
      for (Vertex v = 0; v < n; ++v) order[v] = v;
      check_steps(g, order);
    }
  }
}

TEST_CASE("per-step minimum: random graphs with n <= 12") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 11;
    const Graph g = testing::random_graph(n, 0.2 + 0.6 * (rng() % 100) / 100.0, rng);
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    check_steps(g, order);
  }
}

TEST_CASE("output is an inclusion-minimal completion") {
  std::mt19937_64 rng(4);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 4 + rng() % 9;
    const Graph g = testing::random_graph(n, 0.4, rng);
    const auto c = complete_graph(g);
    const Graph h = to_graph(c.cotree, n);
    REQUIRE(oracle::is_cograph_naive(h));
    REQUIRE(testing::contains_all_edges(h, g));
    REQUIRE(h.edge_count() == g.edge_count() + c.fill_edges.size());
    REQUIRE(c.m_prime == h.edge_count());
    if (c.fill_edges.size() > 12) continue;
    REQUIRE(oracle::is_minimal_completion(g, c.fill_edges) == oracle::Minimality::Minimal);
    ++checked;
  }
  CHECK(checked > 200);
}

TEST_CASE("cograph inputs need no fill under any order") {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 1 + seed % 40;
    const Graph g = to_graph(generate_random_cotree(n, seed), n);
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    const auto c = complete_graph(g, order);
    CHECK(c.fill_edges.empty());
    for (auto cost : c.per_step_costs) CHECK(cost == 0);
  }
}

TEST_CASE("nodes touched per step stay within 8 d'") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + rng() % 120;
    const Graph g = testing::random_graph(n, 0.05 + 0.3 * (rng() % 10) / 10.0, rng);
    const auto c = complete_graph(g);
    for (const auto& s : c.steps) REQUIRE(s.nodes_touched <= 8 * s.completed_degree);
  }
}

#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cograph::testing {

namespace {

// Bit index of pair (i, j), i < j, in the upper-triangle code.
std::uint32_t pair_bit(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return static_cast<std::uint32_t>(j * (j - 1) / 2 + i);
}

bool has(std::uint32_t code, std::size_t i, std::size_t j) { return code >> pair_bit(i, j) & 1; }

// Minimum code over vertex orders that keep the (degree, neighbour degrees)
// refinement classes in place.
std::uint32_t canonical(std::uint32_t code, std::size_t n) {
  std::vector<std::size_t> deg(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && has(code, i, j)) ++deg[i];
    }
  }
  std::vector<std::vector<std::size_t>> key(n);
  for (std::size_t i = 0; i < n; ++i) {
    key[i].push_back(deg[i]);
    std::vector<std::size_t> nd;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && has(code, i, j)) nd.push_back(deg[j]);
    }
    std::sort(nd.begin(), nd.end());
    key[i].insert(key[i].end(), nd.begin(), nd.end());
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return key[a] < key[b]; });

  // Class boundaries; permute inside each class.
  std::vector<std::pair<std::size_t, std::size_t>> classes;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && key[order[j]] == key[order[i]]) ++j;
    classes.emplace_back(i, j);
    i = j;
  }
  std::uint32_t best = 0xffffffffu;
  std::vector<std::size_t> perm = order;
  auto evaluate = [&] {
    std::uint32_t c = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (has(code, perm[a], perm[b])) c |= std::uint32_t{1} << pair_bit(a, b);
      }
    }
    best = std::min(best, c);
  };
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == classes.size()) {
      evaluate();
      return;
    }
    auto [b, e] = classes[k];
    std::sort(perm.begin() + b, perm.begin() + e);
    do {
      self(self, k + 1);
    } while (std::next_permutation(perm.begin() + b, perm.begin() + e));
  };
  rec(rec, 0);
  return best;
}

}  // namespace

Graph labelled_graph(std::size_t n, std::uint32_t code) {
  Graph g(n);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (has(code, i, j)) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  return g;
}

std::vector<Graph> nonisomorphic_graphs(std::size_t n) {
  std::set<std::uint32_t> level{0};
  for (std::size_t k = 1; k < n; ++k) {
    // Add vertex k with every neighbour set among 0..k-1.
    std::set<std::uint32_t> next;
    for (auto code : level) {
      for (std::uint32_t nb = 0; nb < (std::uint32_t{1} << k); ++nb) {
        std::uint32_t c = code;
        for (std::size_t i = 0; i < k; ++i) {
          if (nb >> i & 1) c |= std::uint32_t{1} << pair_bit(i, k);
        }
        next.insert(canonical(c, k + 1));
      }
    }
    level = std::move(next);
  }
  std::vector<Graph> out;
  for (auto code : level) out.push_back(labelled_graph(n, code));
  return out;
}

Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

bool contains_all_edges(const Graph& big, const Graph& small) {
  for (const auto& e : small.edges()) {
    if (!big.has_edge(e.u, e.v)) return false;
  }
  return true;
}

DenseView dense_view(const Cotree& t, std::span<const Vertex> inserted) {
  DenseView out;
  Vertex top = 0;
  for (Vertex v : inserted) top = std::max(top, v);
  out.dense_of.assign(inserted.empty() ? 0 : top + 1, 0xffffffffu);
  for (std::size_t i = 0; i < inserted.size(); ++i) out.dense_of[inserted[i]] = static_cast<Vertex>(i);
  out.graph = Graph(inserted.size());
  for (const auto& e : t.edges()) out.graph.add_edge(out.dense_of[e.u], out.dense_of[e.v]);
  return out;
}

std::uint32_t NaiveForest::find_root(std::uint32_t u) const {
  while (parent_[u] != kNone) u = parent_[u];
  return u;
}

std::size_t NaiveForest::depth(std::uint32_t u) const {
  std::size_t d = 0;
  while (parent_[u] != kNone) {
    u = parent_[u];
    ++d;
  }
  return d;
}

void NaiveForest::evert(std::uint32_t u) {
  std::uint32_t prev = kNone;
  while (u != kNone) {
    const std::uint32_t up = parent_[u];
    parent_[u] = prev;
    prev = u;
    u = up;
  }
}

bool NaiveForest::is_ancestor(std::uint32_t anc, std::uint32_t u) const {
  for (; u != kNone; u = parent_[u]) {
    if (u == anc) return true;
  }
  return false;
}

std::uint32_t NaiveForest::lca(std::uint32_t u, std::uint32_t v) const {
  for (std::uint32_t a = u; a != kNone; a = parent_[a]) {
    if (is_ancestor(a, v)) return a;
  }
  return kNone;
}

std::uint32_t NaiveForest::next_step_to_descendant(std::uint32_t u, std::uint32_t v) const {
  while (v != kNone && parent_[v] != u) v = parent_[v];
  return v;
}

}  // namespace cograph::testing

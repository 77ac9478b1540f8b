#include "cograph/oracle.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "cograph/error.hpp"

namespace cograph::oracle {

namespace {

// Row-major adjacency bit matrix.
class BitMatrix {
 public:
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}
  explicit BitMatrix(const Graph& g) : BitMatrix(g.vertex_count()) {
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v : g.neighbours(u)) set(u, v);
    }
  }

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }
  void set(std::size_t u, std::size_t v) { bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64); }
  void clear(std::size_t u, std::size_t v) { bits_[u * words_ + v / 64] &= ~(std::uint64_t{1} << (v % 64)); }
  bool test(std::size_t u, std::size_t v) const { return bits_[u * words_ + v / 64] >> (v % 64) & 1; }
  const std::uint64_t* row(std::size_t u) const { return bits_.data() + u * words_; }

 private:
  std::size_t n_, words_;
  std::vector<std::uint64_t> bits_;
};

// Looks for a-b-c-d around every edge bc.
bool has_p4(const BitMatrix& m) {
  const std::size_t n = m.size(), w = m.words();
  std::vector<std::uint64_t> a_set(w), d_set(w);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t c = 0; c < n; ++c) {
      if (b == c || !m.test(b, c)) continue;
      const auto* rb = m.row(b);
      const auto* rc = m.row(c);
      bool any_d = false;
      for (std::size_t k = 0; k < w; ++k) {
        a_set[k] = rb[k] & ~rc[k];
        d_set[k] = rc[k] & ~rb[k];
        any_d |= d_set[k] != 0;
      }
      a_set[c / 64] &= ~(std::uint64_t{1} << (c % 64));
      d_set[b / 64] &= ~(std::uint64_t{1} << (b % 64));
      if (!any_d) continue;
      for (std::size_t k = 0; k < w; ++k) {
        for (std::uint64_t bits = a_set[k]; bits; bits &= bits - 1) {
          const std::size_t a = k * 64 + std::countr_zero(bits);
          const auto* ra = m.row(a);
          for (std::size_t j = 0; j < w; ++j) {
            if (d_set[j] & ~ra[j]) return true;
          }
        }
      }
    }
  }
  return false;
}

// Single-word variant for the step enumeration.
bool has_p4_small(std::span<const std::uint64_t> adj) {
  const std::size_t n = adj.size();
  for (std::size_t b = 0; b < n; ++b) {
    for (std::uint64_t cs = adj[b]; cs; cs &= cs - 1) {
      const std::size_t c = std::countr_zero(cs);
      const std::uint64_t d_set = adj[c] & ~adj[b] & ~(std::uint64_t{1} << b);
      if (!d_set) continue;
      for (std::uint64_t as = adj[b] & ~adj[c] & ~(std::uint64_t{1} << c); as; as &= as - 1) {
        if (d_set & ~adj[std::countr_zero(as)]) return true;
      }
    }
  }
  return false;
}

// Connected components of g[s] (complement when co is set), as vertex lists.
std::vector<std::vector<Vertex>> components(const BitMatrix& m, const std::vector<Vertex>& s, bool co) {
  std::vector<std::vector<Vertex>> out;
  std::vector<char> done(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> stack{i};
    done[i] = 1;
    std::vector<Vertex> comp;
    while (!stack.empty()) {
      const std::size_t j = stack.back();
      stack.pop_back();
      comp.push_back(s[j]);
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (done[k] || k == j) continue;
        if (m.test(s[j], s[k]) != co) {
          done[k] = 1;
          stack.push_back(k);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::optional<NodeId> build(Cotree& t, const BitMatrix& m, const std::vector<Vertex>& s) {
  if (s.size() == 1) return t.new_leaf(s.front());
  for (bool co : {false, true}) {
    auto parts = components(m, s, co);
    if (parts.size() < 2) continue;
    std::vector<NodeId> kids;
    for (const auto& p : parts) {
      auto k = build(t, m, p);
      if (!k) return std::nullopt;
      kids.push_back(*k);
    }
    return t.new_internal(co ? NodeKind::Series : NodeKind::Parallel, kids);
  }
  return std::nullopt;
}

void check_neighbours(const Cotree& t, std::span<const Vertex> neighbours) {
  for (Vertex y : neighbours) t.leaf_of(y);
}

bool in(std::span<const Vertex> sorted, Vertex v) { return std::binary_search(sorted.begin(), sorted.end(), v); }

std::vector<Vertex> sorted_copy(std::span<const Vertex> v) {
  std::vector<Vertex> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool has_induced_p4_exhaustive(const Graph& g) {
  const std::size_t n = g.vertex_count();
  Vertex p[4];
  // Every ordered quadruple of distinct vertices read as a path a-b-c-d.
  for (p[0] = 0; p[0] < n; ++p[0]) {
    for (p[1] = 0; p[1] < n; ++p[1]) {
      if (p[1] == p[0] || !g.has_edge(p[0], p[1])) continue;
      for (p[2] = 0; p[2] < n; ++p[2]) {
        if (p[2] == p[0] || p[2] == p[1] || !g.has_edge(p[1], p[2]) || g.has_edge(p[0], p[2])) continue;
        for (p[3] = 0; p[3] < n; ++p[3]) {
          if (p[3] == p[0] || p[3] == p[1] || p[3] == p[2]) continue;
          if (g.has_edge(p[2], p[3]) && !g.has_edge(p[0], p[3]) && !g.has_edge(p[1], p[3])) return true;
        }
      }
    }
  }
  return false;
}

bool is_cograph_naive(const Graph& g) { return !has_p4(BitMatrix(g)); }

std::optional<Cotree> build_cotree_naive(const Graph& g) {
  Cotree t;
  if (g.vertex_count() == 0) return t;
  const BitMatrix m(g);
  std::vector<Vertex> all(g.vertex_count());
  for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
  auto root = build(t, m, all);
  if (!root) return std::nullopt;
  t.set_root(*root);
  return t;
}

StepBruteForce min_step_completion_bruteforce(const Graph& h, std::span<const Vertex> neighbours) {
  const std::size_t n = h.vertex_count();
  if (n > 63) throw ContractError("step brute force supports at most 63 vertices");
  std::vector<std::uint64_t> adj(n + 1, 0);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : h.neighbours(u)) adj[u] |= std::uint64_t{1} << v;
  }
  if (has_p4_small(adj)) throw ContractError("step brute force needs a cograph");
  const Vertex x = static_cast<Vertex>(n);
  std::uint64_t base = 0;
  for (Vertex y : neighbours) {
    if (y >= n) throw LookupError("neighbour " + std::to_string(y) + " out of range");
    base |= std::uint64_t{1} << y;
  }
  std::vector<Vertex> outside;
  for (Vertex v = 0; v < n; ++v) {
    if (!(base >> v & 1)) outside.push_back(v);
  }
  const std::size_t k = outside.size();
  if (k > 20) throw ContractError("step brute force supports at most 20 non-neighbours");

  const std::size_t subsets = std::size_t{1} << k;
  std::vector<char> feasible(subsets, 0);
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::uint64_t nx = base;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) nx |= std::uint64_t{1} << outside[i];
    }
    auto a = adj;
    a[x] = nx;
    for (Vertex v = 0; v < n; ++v) {
      if (nx >> v & 1) a[v] |= std::uint64_t{1} << x;
    }
    feasible[mask] = !has_p4_small(a);
  }
  // below[mask]: some subset of mask (itself included) is feasible.
  std::vector<char> below(feasible);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      if (mask >> i & 1) below[mask] |= below[mask ^ (std::size_t{1} << i)];
    }
  }
  StepBruteForce out;
  bool first = true;
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    if (!feasible[mask]) continue;
    const auto size = static_cast<std::uint64_t>(std::popcount(mask));
    if (first || size < out.min_cost) out.min_cost = size;
    first = false;
    bool minimal = true;
    for (std::size_t i = 0; i < k && minimal; ++i) {
      if (mask >> i & 1) minimal = !below[mask ^ (std::size_t{1} << i)];
    }
    if (!minimal) continue;
    std::vector<Vertex> set;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) set.push_back(outside[i]);
    }
    out.minimal_sets.push_back(std::move(set));
  }
  std::sort(out.minimal_sets.begin(), out.minimal_sets.end());
  return out;
}

Graph with_edges(const Graph& g, std::span<const Edge> extra) {
  Graph out = g;
  for (const Edge& e : extra) out.add_edge(e.u, e.v);
  return out;
}

Minimality is_minimal_completion(const Graph& g, std::span<const Edge> fill, std::size_t guard) {
  const std::size_t n = g.vertex_count();
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const Edge& e : fill) {
    if (e.u >= n || e.v >= n) throw ValidationError("fill edge out of range");
    if (e.u == e.v) throw ValidationError("fill edge is a self-loop");
    if (g.has_edge(e.u, e.v)) throw ValidationError("fill edge already in the graph");
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) throw ValidationError("repeated fill edge");
  }
  if (fill.size() > guard) return Minimality::Skipped;

  BitMatrix m(g);
  auto apply = [&](std::size_t mask) {
    for (std::size_t i = 0; i < fill.size(); ++i) {
      const bool on = mask >> i & 1;
      const Edge& e = fill[i];
      if (on) {
        m.set(e.u, e.v);
        m.set(e.v, e.u);
      } else {
        m.clear(e.u, e.v);
        m.clear(e.v, e.u);
      }
    }
  };
  const std::size_t full = (std::size_t{1} << fill.size()) - 1;
  apply(full);
  if (has_p4(m)) return Minimality::NotMinimal;
  for (std::size_t mask = 0; mask < full; ++mask) {
    apply(mask);
    if (!has_p4(m)) return Minimality::NotMinimal;
  }
  return Minimality::Minimal;
}

bool is_hollow(const Cotree& t, NodeId u, std::span<const Vertex> neighbours) {
  const auto nb = sorted_copy(neighbours);
  for (Vertex v : t.leaves_under(u)) {
    if (in(nb, v)) return false;
  }
  return true;
}

bool is_full(const Cotree& t, NodeId u, std::span<const Vertex> neighbours) {
  const auto nb = sorted_copy(neighbours);
  for (Vertex v : t.leaves_under(u)) {
    if (!in(nb, v)) return false;
  }
  return true;
}

bool is_eligible(const Cotree& t, NodeId u, std::span<const Vertex> neighbours) {
  for (NodeId a = u, p = t.parent(u); p != kNoNode; a = p, p = t.parent(p)) {
    if (t.kind(p) != NodeKind::Parallel) continue;
    for (NodeId c : t.children(p)) {
      if (c != a && !is_hollow(t, c, neighbours)) return false;
    }
  }
  return true;
}

bool is_forced(const Cotree& t, NodeId u, std::span<const Vertex> neighbours) {
  if (is_full(t, u, neighbours)) return true;
  if (t.is_leaf(u)) return false;
  if (t.kind(u) == NodeKind::Parallel) {
    for (NodeId c : t.children(u)) {
      if (is_hollow(t, c, neighbours)) return false;
    }
    return true;
  }
  for (NodeId c : t.children(u)) {
    if (!is_forced(t, c, neighbours)) return false;
  }
  return true;
}

std::vector<Vertex> anchored_completion(const Cotree& t, NodeId u, std::span<const Vertex> neighbours) {
  const auto nb = sorted_copy(neighbours);
  std::vector<Vertex> fill;
  auto take = [&](NodeId v) {
    for (Vertex y : t.leaves_under(v)) {
      if (!in(nb, y)) fill.push_back(y);
    }
  };
  for (NodeId a = u, p = t.parent(u); p != kNoNode; a = p, p = t.parent(p)) {
    if (t.kind(p) != NodeKind::Series) continue;
    for (NodeId c : t.children(p)) {
      if (c != a) take(c);
    }
  }
  if (!t.is_leaf(u)) {
    for (NodeId c : t.children(u)) {
      if (!is_hollow(t, c, neighbours)) take(c);
    }
  }
  std::sort(fill.begin(), fill.end());
  return fill;
}

bool is_completion_minimal_insertion_node(const Cotree& t, NodeId u, std::span<const Vertex> neighbours) {
  check_neighbours(t, neighbours);
  const std::size_t n = t.vertex_count();
  for (Vertex v : t.vertices()) {
    if (v >= n) throw ContractError("cotree vertices must be 0..n-1");
  }
  if (t.is_leaf(u) || !is_eligible(t, u, neighbours)) return false;
  const auto fill = anchored_completion(t, u, neighbours);
  std::vector<Vertex> completed(neighbours.begin(), neighbours.end());
  completed.insert(completed.end(), fill.begin(), fill.end());
  bool has_hollow = false, has_nonhollow = false;
  for (NodeId c : t.children(u)) {
    (is_hollow(t, c, completed) ? has_hollow : has_nonhollow) = true;
  }
  if (!has_hollow || !has_nonhollow) return false;
  const auto bf = min_step_completion_bruteforce(to_graph(t, n), neighbours);
  return std::binary_search(bf.minimal_sets.begin(), bf.minimal_sets.end(), fill);
}

}  // namespace cograph::oracle

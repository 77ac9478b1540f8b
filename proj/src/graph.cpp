#include "cograph/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "cograph/error.hpp"

namespace cograph {

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= vertex_count() || v >= vertex_count()) {
    throw ValidationError("edge endpoint out of range");
  }
  if (u == v) {
    throw ValidationError("self-loop on vertex " + std::to_string(u));
  }
  auto& nu = adjacency_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) {
    throw ValidationError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
  }
  nu.insert(it, v);
  auto& nv = adjacency_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++edges_;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= vertex_count() || v >= vertex_count()) return false;
  const auto& nu = adjacency_[u];
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

Vertex LabelledGraph::id_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<Vertex>(i);
  }
  throw LookupError("unknown vertex label '" + std::string(label) + "'");
}

namespace {

struct RawLine {
  std::size_t line;
  std::string a;
  std::string b;
};

std::vector<RawLine> tokenize_pairs(std::istream& in) {
  std::vector<RawLine> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream ls(line);
    std::string a;
    if (!(ls >> a) || a.front() == '#') continue;
    std::string b;
    std::string extra;
    if (!(ls >> b)) throw ParseError(number, "expected two vertex tokens");
    if (ls >> extra && extra.front() != '#') throw ParseError(number, "trailing token '" + extra + "'");
    out.push_back({number, std::move(a), std::move(b)});
  }
  return out;
}

bool parse_unsigned(const std::string& s, std::uint64_t& value) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

LabelledGraph parse_edge_list(std::istream& in) {
  const auto lines = tokenize_pairs(in);

  bool numeric = true;
  for (const auto& l : lines) {
    std::uint64_t tmp;
    if (!parse_unsigned(l.a, tmp) || !parse_unsigned(l.b, tmp)) {
      numeric = false;
      break;
    }
  }

  LabelledGraph result;
  std::unordered_map<std::string, Vertex> ids;
  if (numeric) {
    std::set<std::uint64_t> values;
    for (const auto& l : lines) {
      std::uint64_t a = 0, b = 0;
      parse_unsigned(l.a, a);
      parse_unsigned(l.b, b);
      values.insert(a);
      values.insert(b);
    }
    for (auto v : values) {
      ids.emplace(std::to_string(v), static_cast<Vertex>(result.labels.size()));
      result.labels.push_back(std::to_string(v));
    }
  } else {
    for (const auto& l : lines) {
      for (const auto* tok : {&l.a, &l.b}) {
        if (ids.emplace(*tok, static_cast<Vertex>(result.labels.size())).second) {
          result.labels.push_back(*tok);
        }
      }
    }
  }

  auto lookup = [&](const std::string& tok) {
    if (numeric) {
      std::uint64_t v = 0;
      parse_unsigned(tok, v);
      return ids.at(std::to_string(v));
    }
    return ids.at(tok);
  };

  result.graph = Graph(result.labels.size());
  for (const auto& l : lines) {
    try {
      result.graph.add_edge(lookup(l.a), lookup(l.b));
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(l.line) + ": " + e.what());
    }
  }
  return result;
}

LabelledGraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

LabelledGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_edge_list(in);
}

std::vector<Edge> parse_edge_pairs(std::istream& in, const LabelledGraph& labels) {
  std::vector<Edge> out;
  for (const auto& l : tokenize_pairs(in)) {
    Vertex a, b;
    try {
      a = labels.id_of(l.a);
      b = labels.id_of(l.b);
    } catch (const LookupError& e) {
      throw ParseError(l.line, e.what());
    }
    if (a == b) throw ValidationError("line " + std::to_string(l.line) + ": self-loop");
    out.push_back({std::min(a, b), std::max(a, b)});
  }
  return out;
}

std::string serialize_edge_list(const Graph& g) {
  std::string out;
  for (const auto& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

Graph generate_random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if ((n * d) % 2 != 0) throw InvalidParameters("n*d must be even");
  if (d >= n && !(n == 0 && d == 0)) throw InvalidParameters("degree must be smaller than n");

  constexpr int kMaxAttempts = 100;
  std::mt19937_64 rng(seed);
  std::vector<Vertex> stubs(n * d);
  for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<Vertex>(i / d);

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    Graph g(n);
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size() && simple; i += 2) {
      Vertex a = stubs[i], b = stubs[i + 1];
      if (a == b || g.has_edge(a, b)) {
        simple = false;
      } else {
        g.add_edge(a, b);
      }
    }
    if (simple) return g;
  }
  throw RetryExceeded("configuration model produced no simple graph in 100 attempts");
}

Graph generate_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n ? n - 1 : 0) / 2;
  if (m > pairs) throw InvalidParameters("more edges requested than vertex pairs");

  std::mt19937_64 rng(seed);
  Graph g(n);
  if (m * 2 > pairs) {
    // Dense: shuffle all pairs.
    std::vector<Edge> all;
    all.reserve(pairs);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) all.push_back({u, v});
    std::shuffle(all.begin(), all.end(), rng);
    for (std::size_t i = 0; i < m; ++i) g.add_edge(all[i].u, all[i].v);
    return g;
  }
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n ? n - 1 : 0));
  while (g.edge_count() < m) {
    Vertex a = pick(rng), b = pick(rng);
    if (a != b && !g.has_edge(a, b)) g.add_edge(a, b);
  }
  return g;
}

Graph permute(const Graph& g, std::span<const Vertex> perm) {
  if (perm.size() != g.vertex_count()) throw ContractError("permutation size mismatch");
  Graph out(g.vertex_count());
  for (const auto& e : g.edges()) out.add_edge(perm[e.u], perm[e.v]);
  return out;
}

}  // namespace cograph

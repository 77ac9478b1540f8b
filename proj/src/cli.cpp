#include "cograph/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cograph/error.hpp"
#include "cograph/linear_completion.hpp"
#include "cograph/oracle.hpp"
#include "cograph/polylog_completion.hpp"

namespace cograph {

Completion run_completion(const Graph& g, std::span<const Vertex> order, Algorithm algo, RunStats& stats) {
  const auto start = std::chrono::steady_clock::now();
  Completion c = algo == Algorithm::Linear ? complete_graph(g, order) : complete_graph_fast(g, order);
  const auto stop = std::chrono::steady_clock::now();
  stats.algo = algo == Algorithm::Linear ? "linear" : "polylog";
  stats.n = g.vertex_count();
  stats.m = g.edge_count();
  stats.m_prime = c.m_prime;
  stats.fill_count = c.m_prime - g.edge_count();
  stats.per_step_costs = c.per_step_costs;
  stats.nodes_touched = 0;
  stats.lca_queries = 0;
  for (const auto& s : c.steps) {
    stats.nodes_touched += s.nodes_touched;
    stats.lca_queries += s.lca_queries + s.sort_lca_queries;
  }
  stats.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return c;
}

std::vector<Vertex> make_order(std::size_t n, bool shuffle, std::uint64_t seed) {
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  if (shuffle) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  }
  return order;
}

std::string format_stats(const RunStats& s) {
  std::ostringstream o;
  o << "algo=" << s.algo << '\n';
  o << "n=" << s.n << '\n';
  o << "m=" << s.m << '\n';
  o << "m_prime=" << s.m_prime << '\n';
  o << "fill_count=" << s.fill_count << '\n';
  o << "per_step_costs=";
  for (std::size_t i = 0; i < s.per_step_costs.size(); ++i) o << (i ? "," : "") << s.per_step_costs[i];
  o << '\n';
  o << "nodes_touched=" << s.nodes_touched << '\n';
  o << "lca_queries=" << s.lca_queries << '\n';
  o << "wall_time_ms=" << std::fixed << std::setprecision(3) << s.wall_time_ms << '\n';
  return o.str();
}

namespace {

// "-" is stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) {
    if (path == "-") {
      stream_ = &out;
      return;
    }
    file_.open(path);
    if (!file_) throw Error("cannot write '" + path + "'");
    stream_ = &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

Algorithm parse_algo(const std::string& s) { return s == "polylog" ? Algorithm::Polylog : Algorithm::Linear; }

struct CompleteArgs {
  std::string input;
  std::string algo = "linear";
  std::string order = "input";
  std::uint64_t seed = 0;
  std::string fill_path = "-";
  std::string cotree_path;
  std::string stats_path;
};

int cmd_complete(const CompleteArgs& a, std::ostream& out) {
  const LabelledGraph lg = read_edge_list_file(a.input);
  const auto order = make_order(lg.graph.vertex_count(), a.order == "shuffle", a.seed);
  RunStats stats;
  const Completion c = run_completion(lg.graph, order, parse_algo(a.algo), stats);

  {
    Sink fill(a.fill_path, out);
    for (const auto& e : c.fill_edges) *fill << lg.labels[e.u] << ' ' << lg.labels[e.v] << '\n';
  }
  if (!a.cotree_path.empty()) {
    Sink s(a.cotree_path, out);
    *s << c.cotree.serialize() << '\n';
  }
  if (!a.stats_path.empty()) {
    Sink s(a.stats_path, out);
    *s << format_stats(stats);
  }
  return 0;
}

int cmd_verify(const std::string& input, const std::string& fill_path, std::ostream& out) {
  const LabelledGraph lg = read_edge_list_file(input);
  std::ifstream in(fill_path);
  if (!in) throw Error("cannot open '" + fill_path + "'");
  const auto fill = parse_edge_pairs(in, lg);
  switch (oracle::is_minimal_completion(lg.graph, fill)) {
    case oracle::Minimality::Minimal:
      out << "minimal\n";
      return 0;
    case oracle::Minimality::NotMinimal:
      out << "not minimal\n";
      return 1;
    case oracle::Minimality::Skipped:
      out << "skipped: " << fill.size() << " fill edges exceed the guard of " << oracle::kMinimalityGuard << '\n';
      return kExitSkipped;
  }
  return 1;
}

int cmd_recognize(const std::string& input, std::ostream& out) {
  const LabelledGraph lg = read_edge_list_file(input);
  const Completion c = complete_graph(lg.graph);
  if (!c.fill_edges.empty()) {
    out << "not a cograph\n";
    return 1;
  }
  out << "cograph\n" << c.cotree.serialize() << '\n';
  return 0;
}

struct BenchArgs {
  std::string family = "regular3";
  std::vector<std::size_t> sizes;
  std::size_t seeds = 10;
  std::string algo = "linear";
  std::size_t jobs = 0;
  double gnm_ratio = 1.0;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.sizes.empty()) throw CLI::ValidationError("--sizes", "at least one size is required");
  if (a.seeds == 0) throw CLI::ValidationError("--seeds", "must be positive");
  struct Run {
    std::size_t n;
    std::uint64_t seed;
    std::uint64_t fill = 0;
    double ms = 0;
    std::string error;
  };
  std::vector<Run> runs;
  for (auto n : a.sizes) {
    for (std::uint64_t s = 1; s <= a.seeds; ++s) runs.push_back({n, s, 0, 0, {}});
  }
  const Algorithm algo = parse_algo(a.algo);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < runs.size();) {
      Run& r = runs[i];
      try {
        const Graph g = a.family == "gnm"
                            ? generate_gnm(r.n, static_cast<std::size_t>(a.gnm_ratio * r.n), r.seed)
                            : generate_random_regular(r.n, 3, r.seed);
        RunStats st;
        run_completion(g, make_order(r.n, false, 0), algo, st);
        r.fill = st.fill_count;
        r.ms = st.wall_time_ms;
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };
  std::size_t jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, runs.size());
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& r : runs) {
    if (!r.error.empty()) throw Error("n=" + std::to_string(r.n) + " seed=" + std::to_string(r.seed) + ": " + r.error);
  }

  out << "n\tmean_fill\tfill_per_n2\tmean_time_ms\n";
  out << std::fixed;
  for (auto n : a.sizes) {
    double fill = 0, ms = 0;
    for (const auto& r : runs) {
      if (r.n != n) continue;
      fill += static_cast<double>(r.fill);
      ms += r.ms;
    }
    fill /= static_cast<double>(a.seeds);
    ms /= static_cast<double>(a.seeds);
    out << n << '\t' << std::setprecision(1) << fill << '\t' << std::setprecision(5)
        << fill / (static_cast<double>(n) * static_cast<double>(n)) << '\t' << std::setprecision(3) << ms << '\n';
  }
  return 0;
}

struct GenerateArgs {
  std::string family = "regular3";
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 3;
  std::uint64_t seed = 1;
  std::string output = "-";
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  Graph g;
  if (a.family == "regular") {
    g = generate_random_regular(a.n, a.d, a.seed);
  } else if (a.family == "regular3") {
    g = generate_random_regular(a.n, 3, a.seed);
  } else if (a.family == "gnm") {
    g = generate_gnm(a.n, a.m, a.seed);
  } else {
    g = to_graph(generate_random_cotree(a.n, a.seed), a.n);
  }
  Sink s(a.output, out);
  *s << serialize_edge_list(g);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inclusion-minimal cograph completion", "cograph"};
  app.require_subcommand(1);
  const std::vector<std::string> algos{"linear", "polylog"};

  CompleteArgs ca;
  auto* complete = app.add_subcommand("complete", "Complete a graph into a cograph");
  complete->add_option("input", ca.input, "Edge-list file")->required();
  complete->add_option("--algo", ca.algo)->check(CLI::IsMember(algos))->capture_default_str();
  complete->add_option("--order", ca.order)->check(CLI::IsMember({"input", "shuffle"}))->capture_default_str();
  complete->add_option("--seed", ca.seed, "Shuffle seed")->capture_default_str();
  complete->add_option("--emit-fill-edges", ca.fill_path, "Fill edge sink, '-' for stdout")->capture_default_str();
  complete->add_option("--output-cotree", ca.cotree_path, "Cotree text sink, '-' for stdout");
  complete->add_option("--stats", ca.stats_path, "Stats sink, '-' for stdout");

  std::string verify_input, verify_fill;
  auto* verify = app.add_subcommand("verify", "Check that a fill set is an inclusion-minimal completion");
  verify->add_option("input", verify_input, "Edge-list file")->required();
  verify->add_option("fill", verify_fill, "Fill edge file")->required();

  std::string recognize_input;
  auto* recognize = app.add_subcommand("recognize", "Decide whether a graph is a cograph and print its cotree");
  recognize->add_option("input", recognize_input, "Edge-list file")->required();

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Fill density over random graph families");
  bench->add_option("--family", ba.family)->check(CLI::IsMember({"regular3", "gnm"}))->capture_default_str();
  bench->add_option("--sizes", ba.sizes, "Comma-separated vertex counts")->delimiter(',');
  bench->add_option("--seeds", ba.seeds, "Seeds per size")->capture_default_str();
  bench->add_option("--algo", ba.algo)->check(CLI::IsMember(algos))->capture_default_str();
  bench->add_option("--jobs", ba.jobs, "Worker threads, 0 for all cores")->capture_default_str();
  bench->add_option("--gnm-ratio", ba.gnm_ratio, "m/n for the gnm family")->capture_default_str();

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Write a random graph as an edge list");
  generate->add_option("family", ga.family)
      ->check(CLI::IsMember({"regular", "regular3", "gnm", "cograph"}))
      ->capture_default_str();
  generate->add_option("-n", ga.n, "Vertex count")->required();
  generate->add_option("-m", ga.m, "Edge count (gnm)");
  generate->add_option("-d", ga.d, "Degree (regular)")->capture_default_str();
  generate->add_option("--seed", ga.seed)->capture_default_str();
  generate->add_option("-o,--output", ga.output)->capture_default_str();

  try {
    app.parse(argc, argv);
    if (*complete) return cmd_complete(ca, out);
    if (*verify) return cmd_verify(verify_input, verify_fill, out);
    if (*recognize) return cmd_recognize(recognize_input, out);
    if (*bench) return cmd_bench(ba, out);
    if (*generate) return cmd_generate(ga, out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace cograph

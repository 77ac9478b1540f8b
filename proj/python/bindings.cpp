#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "cograph/cli.hpp"
#include "cograph/cotree.hpp"
#include "cograph/error.hpp"
#include "cograph/graph.hpp"
#include "cograph/linear_completion.hpp"
#include "cograph/oracle.hpp"
#include "cograph/polylog_completion.hpp"

namespace py = pybind11;
using namespace cograph;

namespace {

std::vector<std::pair<Vertex, Vertex>> as_pairs(const std::vector<Edge>& edges) {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.emplace_back(e.u, e.v);
  return out;
}

std::vector<Edge> as_edges(const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  std::vector<Edge> out;
  out.reserve(pairs.size());
  for (auto [u, v] : pairs) out.push_back({std::min(u, v), std::max(u, v)});
  return out;
}

Graph graph_from_pairs(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  Graph g(n);
  for (auto [u, v] : pairs) g.add_edge(u, v);
  return g;
}

Algorithm algo_of(const std::string& s) {
  if (s == "linear") return Algorithm::Linear;
  if (s == "polylog") return Algorithm::Polylog;
  throw InvalidParameters("algo must be 'linear' or 'polylog'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Inclusion-minimal cograph completion";

  auto error = py::register_exception<Error>(m, "CographError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<Graph>(m, "Graph")
      .def(py::init<std::size_t>(), py::arg("n") = 0)
      .def(py::init(&graph_from_pairs), py::arg("n"), py::arg("edges"))
      .def("add_edge", &Graph::add_edge)
      .def("has_edge", &Graph::has_edge)
      .def_property_readonly("n", &Graph::vertex_count)
      .def_property_readonly("m", &Graph::edge_count)
      .def("neighbours", [](const Graph& g, Vertex u) {
        auto s = g.neighbours(u);
        return std::vector<Vertex>(s.begin(), s.end());
      })
      .def("edges", [](const Graph& g) { return as_pairs(g.edges()); })
      .def("to_edge_list", &serialize_edge_list)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.vertex_count()) + ", m=" + std::to_string(g.edge_count()) + ")";
      });

  m.def(
      "parse_edge_list",
      [](const std::string& text) {
        auto lg = parse_edge_list(std::string_view(text));
        return py::make_tuple(std::move(lg.graph), std::move(lg.labels));
      },
      py::arg("text"), "Returns (graph, labels) where labels[i] is the input token of vertex i.");

  py::class_<Cotree>(m, "Cotree")
      .def_static("deserialize", &Cotree::deserialize)
      .def("serialize", &Cotree::serialize)
      .def("canonical_string", &Cotree::canonical_string)
      .def_property_readonly("vertex_count", &Cotree::vertex_count)
      .def("adjacent", &Cotree::adjacent)
      .def("edge_count", &Cotree::edge_count)
      .def("edges", [](const Cotree& t) { return as_pairs(t.edges()); })
      .def("leaf_order", &Cotree::leaf_order)
      .def("validate",
           [](const Cotree& t) -> std::optional<std::string> {
             auto v = t.validate();
             if (!v) return std::nullopt;
             return v->message;
           })
      .def("to_graph", [](const Cotree& t, std::optional<std::size_t> n) { return to_graph(t, n.value_or(t.vertex_count())); },
           py::arg("n") = py::none())
      .def("__str__", &Cotree::serialize);

  py::class_<Completion>(m, "Completion")
      .def_readonly("cotree", &Completion::cotree)
      .def_property_readonly("fill_edges", [](const Completion& c) { return as_pairs(c.fill_edges); })
      .def_readonly("per_step_costs", &Completion::per_step_costs)
      .def_readonly("m_prime", &Completion::m_prime);

  m.def(
      "complete",
      [](const Graph& g, std::optional<std::vector<Vertex>> order, const std::string& algo) {
        const auto ord = order ? *order : make_order(g.vertex_count(), false, 0);
        py::gil_scoped_release release;
        return algo_of(algo) == Algorithm::Linear ? complete_graph(g, ord) : complete_graph_fast(g, ord);
      },
      py::arg("graph"), py::arg("order") = py::none(), py::arg("algo") = "linear");

  m.def("insertion_order", &make_order, py::arg("n"), py::arg("shuffle") = false, py::arg("seed") = 0);

  m.def("generate_random_regular", &generate_random_regular, py::arg("n"), py::arg("d"), py::arg("seed"));
  m.def("generate_gnm", &generate_gnm, py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("generate_random_cotree", &generate_random_cotree, py::arg("n"), py::arg("seed"), py::arg("max_arity") = 4);

  m.def("is_cograph", &oracle::is_cograph_naive, py::arg("graph"));
  m.def("build_cotree_naive", &oracle::build_cotree_naive, py::arg("graph"));
  m.def(
      "is_minimal_completion",
      [](const Graph& g, const std::vector<std::pair<Vertex, Vertex>>& fill) -> std::optional<bool> {
        switch (oracle::is_minimal_completion(g, as_edges(fill))) {
          case oracle::Minimality::Minimal:
            return true;
          case oracle::Minimality::NotMinimal:
            return false;
          case oracle::Minimality::Skipped:
            break;
        }
        return std::nullopt;
      },
      py::arg("graph"), py::arg("fill"), "True/False, or None when the fill set is too large to check.");
  m.def(
      "min_step_completion",
      [](const Graph& h, const std::vector<Vertex>& neighbours) {
        auto r = oracle::min_step_completion_bruteforce(h, neighbours);
        return py::make_tuple(r.min_cost, r.minimal_sets);
      },
      py::arg("graph"), py::arg("neighbours"));
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "birat/catalog.hpp"
#include "birat/cli.hpp"

namespace py = pybind11;
using namespace birat;

namespace {

// Requests and responses travel as JSON strings; the python package wraps
// them into dict-based helpers.
py::tuple run_json(const std::string& request, unsigned long long seed, int pencil,
                   int height_cap) {
  CliOptions options;
  options.seed = seed;
  options.pencil = pencil;
  options.height_cap = height_cap;
  Json doc = Json::parse(request, nullptr, false);
  if (doc.is_discarded()) {
    Json err{{"error", "ParseError"}, {"detail", "invalid JSON request"}};
    return py::make_tuple(3, err.dump());
  }
  RunResult result = run_request(doc, options);
  return py::make_tuple(result.exit_code, result.output.dump());
}

std::string catalog_json(const std::string& name) {
  return map_to_json(catalog_map(name)).dump();
}

std::string map_expr_json(const std::string& expr) {
  return map_to_json(parse_map_expr(expr)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact birational diffeomorphisms of real rational surfaces";

  m.def("run", &run_json, py::arg("request"), py::arg("seed") = 0, py::arg("pencil") = 10,
        py::arg("height_cap") = 64,
        "Run a JSON request {\"command\":..., \"payload\":...}; returns (exit_code, json)");
  m.def("catalog_map", &catalog_json, py::arg("name"), "Catalog map as JSON");
  m.def("catalog_names", [] { return catalog_names(); });
  m.def("parse_map_expr", &map_expr_json, py::arg("expr"),
        "Resolve a map expression (NAME | compose(a,b) | id:Surface | inline JSON) to JSON");

  py::register_exception<Error>(m, "BiratError");
}

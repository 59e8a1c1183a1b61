#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "sppe/error.hpp"
#include "sppe/generator.hpp"
#include "sppe/good_types.hpp"
#include "sppe/json_io.hpp"
#include "sppe/solver.hpp"
#include "sppe/verifier.hpp"

namespace py = pybind11;
using sppe::io::Json;

namespace {

sppe::Instance parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw sppe::Error(sppe::ErrorKind::Parse, e.what());
  }
  return sppe::io::instance_from_json(doc);
}

std::string solve(const std::string& instance, bool by_types, std::size_t max_goods, std::size_t parallel,
                  bool stats) {
  const sppe::Instance inst = parse_instance(instance);
  sppe::SolverConfig config;
  config.max_goods = max_goods;
  config.parallel = parallel;
  sppe::SolveResult result;
  {
    py::gil_scoped_release release;
    result = by_types ? sppe::solve_by_types(inst, config) : sppe::solve(inst, config);
  }
  Json out = sppe::io::equilibrium_to_json(result.equilibrium);
  if (stats) out["stats"] = sppe::io::stats_to_json(result.stats);
  return out.dump();
}

std::string verify(const std::string& instance, const std::string& equilibrium) {
  const sppe::Instance inst = parse_instance(instance);
  Json doc;
  try {
    doc = Json::parse(equilibrium);
  } catch (const Json::parse_error& e) {
    throw sppe::Error(sppe::ErrorKind::Parse, e.what());
  }
  const auto alloc = sppe::io::allocation_from_json(doc);
  return sppe::io::report_to_json(sppe::verify_equilibrium(inst, alloc.alpha, alloc.x)).dump();
}

std::string aggregate(const std::string& instance) {
  return sppe::io::partition_to_json(sppe::partition_good_types(parse_instance(instance))).dump();
}

std::string gen(std::size_t n, std::size_t m, std::uint64_t seed, std::optional<std::size_t> types, long value_min,
                long value_max, long budget_min, long budget_max, unsigned max_denominator, double zero_probability) {
  sppe::GeneratorConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.types = types;
  cfg.seed = seed;
  cfg.value_min = value_min;
  cfg.value_max = value_max;
  cfg.budget_min = budget_min;
  cfg.budget_max = budget_max;
  cfg.max_denominator = max_denominator;
  cfg.zero_probability = zero_probability;
  return sppe::io::instance_to_json(sppe::generate_instance(cfg)).dump();
}

}  // namespace

PYBIND11_MODULE(_sppe, m) {
  m.doc() = "Exact second-price pacing equilibria. Documents are JSON strings.";

  // The error type lives as long as the module; the translator prefixes
  // the message with the error kind.
  static PyObject* error_type = py::register_exception<sppe::Error>(m, "SppeError").ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const sppe::Error& e) {
      const std::string message = std::string(sppe::to_string(e.kind())) + ": " + e.what();
      PyErr_SetString(error_type, message.c_str());
    }
  });

  m.def("solve", &solve, py::arg("instance"), py::arg("by_types") = false, py::arg("max_goods") = 4,
        py::arg("parallel") = 1, py::arg("stats") = true);
  m.def("verify", &verify, py::arg("instance"), py::arg("equilibrium"));
  m.def("aggregate", &aggregate, py::arg("instance"));
  m.def("gen", &gen, py::arg("n"), py::arg("m"), py::arg("seed") = 1, py::arg("types") = py::none(),
        py::arg("value_min") = 1, py::arg("value_max") = 100, py::arg("budget_min") = 1, py::arg("budget_max") = 50,
        py::arg("max_denominator") = 4, py::arg("zero_probability") = 0.0);
}

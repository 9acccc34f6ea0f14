#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symred/catalog.hpp"
#include "symred/errors.hpp"
#include "symred/lie_algebra.hpp"
#include "symred/pipeline.hpp"

namespace py = pybind11;

namespace {

// Structure constants c[i][j][k] of a catalog algebra as a flat row-major list.
std::vector<double> structure_constants(const std::string& name) {
  const auto a = symred::catalog::by_name(name);
  const int n = a.dim();
  std::vector<double> out;
  out.reserve(std::size_t(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out.push_back(a.structure()(i, j, k));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reduction of invariant symplectic connections on T*G (compiled core)";

  static py::exception<symred::Error> error(m, "SymredError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const symred::Error& e) {
      py::object kind = py::str(symred::to_string(e.kind()));
      PyErr_SetObject(error.ptr(), py::make_tuple(kind, py::str(e.what())).ptr());
    }
  });

  m.attr("schema_version") = symred::kSchemaVersion;

  m.def("catalog_names", &symred::catalog::names, "Names accepted in the 'group' config field.");

  m.def("algebra_dim", [](const std::string& name) { return symred::catalog::by_name(name).dim(); });

  m.def("structure_constants", &structure_constants, py::arg("name"),
        "Flat row-major list of c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.");

  m.def(
      "stabilizer_basis",
      [](const std::string& name, const symred::Vector& mu) {
        return symred::Matrix(symred::stabilizer_algebra(symred::catalog::by_name(name), mu));
      },
      py::arg("name"), py::arg("mu"), "Orthonormal basis of g_mu, one column per element.");

  m.def(
      "run",
      [](const std::string& verb, const std::string& config_json, std::optional<std::uint64_t> seed,
         std::optional<double> fd_step, std::optional<double> tol_scale) {
        symred::Overrides ov{seed, fd_step, tol_scale};
        nlohmann::json config;
        try {
          config = nlohmann::json::parse(config_json);
        } catch (const nlohmann::json::parse_error& e) {
          throw symred::Error(symred::ErrorKind::ConfigError, e.what());
        }
        symred::CommandResult result;
        {
          py::gil_scoped_release release;
          result = symred::run_command(verb, config, ov);
        }
        return py::make_tuple(symred::dump_json(result.report), result.exit_code);
      },
      py::arg("verb"), py::arg("config_json"), py::arg("seed") = py::none(), py::arg("fd_step") = py::none(),
      py::arg("tol_scale") = py::none(),
      "Run one command on a JSON config; returns (report_json, exit_code).");
}

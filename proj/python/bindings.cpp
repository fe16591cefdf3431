#include <esale/audit.hpp>
#include <esale/cases.hpp>
#include <esale/ec_flux.hpp>
#include <esale/gas.hpp>
#include <esale/sbp.hpp>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace esale;

namespace {

Eigen::MatrixXd square(const std::vector<double>& v, int n) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  }
  return m;
}

py::dict audit_dict(const AuditReport& r) {
  py::list items;
  for (const auto& i : r.items) {
    items.append(py::dict(py::arg("name") = i.name, py::arg("value") = i.value,
                          py::arg("limit") = i.limit, py::arg("passed") = i.passed));
  }
  return py::dict(py::arg("passed") = r.passed(), py::arg("items") = items);
}

}  // namespace

PYBIND11_MODULE(_esale, m) {
  m.doc() = "Entropy-stable spectral collocation on moving hexahedral grids";

  py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<InadmissibleState>(m, "InadmissibleState");

  m.def(
      "operator",
      [](int p) {
        const Operator1D op = build_operator(p);
        const int n = op.n();
        return py::dict(py::arg("nodes") = op.nodeset.nodes, py::arg("H") = op.H,
                        py::arg("D") = square(op.D, n), py::arg("Q") = square(op.Q, n),
                        py::arg("E") = square(op.E, n));
      },
      py::arg("p"), "LGL nodes, norm and SBP matrices of degree p.");

  py::class_<GasParams>(m, "GasParams")
      .def(py::init<>())
      .def_readwrite("gamma", &GasParams::gamma)
      .def_readwrite("R", &GasParams::R)
      .def_readwrite("Pr", &GasParams::Pr)
      .def_readwrite("mu", &GasParams::mu);
  m.def("benchmark_gas", &benchmark_gas, py::arg("mach"), py::arg("mu") = 0.0, py::arg("Pr") = 0.72);
  m.def("state_from_primitive", &state_from_primitive, py::arg("rho"), py::arg("V"), py::arg("T"),
        py::arg("gas"));
  m.def("entropy_vars", &entropy_vars, py::arg("u"), py::arg("gas"));
  m.def("state_from_entropy_vars", &state_from_entropy_vars, py::arg("w"), py::arg("gas"));
  m.def("log_mean", &log_mean, py::arg("a"), py::arg("b"));
  m.def("ismail_roe_flux", &fsc_ismail_roe, py::arg("uL"), py::arg("uR"), py::arg("direction"),
        py::arg("gas"));
  m.def("physical_flux", &physical_flux, py::arg("u"), py::arg("direction"), py::arg("gas"));

  py::class_<CaseSpec>(m, "CaseSpec")
      .def(py::init<>())
      .def_property(
          "case", [](const CaseSpec& s) { return case_name(s.kind); },
          [](CaseSpec& s, const std::string& n) { s.kind = parse_case(n); })
      .def_readwrite("p", &CaseSpec::p)
      .def_readwrite("grid", &CaseSpec::grid)
      .def_readwrite("t_final", &CaseSpec::t_final)
      .def_readwrite("cfl", &CaseSpec::cfl)
      .def_readwrite("dt", &CaseSpec::dt)
      .def_readwrite("dissipation", &CaseSpec::dissipation)
      .def_readwrite("usc", &CaseSpec::usc)
      .def_readwrite("seed", &CaseSpec::seed)
      .def_readwrite("mu", &CaseSpec::mu)
      .def_readwrite("out", &CaseSpec::out);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("steps", &RunResult::steps)
      .def_readonly("t_reached", &RunResult::t_reached)
      .def_readonly("runtime_s", &RunResult::runtime_s)
      .def_property_readonly("l2", [](const RunResult& r) { return r.error.l2; })
      .def_property_readonly("linf", [](const RunResult& r) { return r.error.linf; })
      .def_readonly("max_state_deviation", &RunResult::max_state_deviation)
      .def_readonly("entropy_initial", &RunResult::entropy_initial)
      .def_readonly("entropy_final", &RunResult::entropy_final)
      .def_readonly("max_entropy_rate", &RunResult::max_entropy_rate)
      .def_readonly("max_conservation_drift", &RunResult::max_conservation_drift)
      .def_readonly("max_embedded_error", &RunResult::max_embedded_error)
      .def_readonly("passed", &RunResult::passed)
      .def_readonly("verdict", &RunResult::verdict);

  m.def("run_case", &run_case, py::arg("spec"), py::call_guard<py::gil_scoped_release>());
  m.def("reference_l2",
        [](const std::string& c, int p, int K) { return reference_l2(parse_case(c), p, K); },
        py::arg("case"), py::arg("p"), py::arg("K"));

  m.def("operator_audit", [](int pmax) { return audit_dict(operator_audit(pmax)); }, py::arg("pmax") = 8);
  m.def("flux_audit", [](int pairs) { return audit_dict(flux_audit(pairs)); }, py::arg("pairs") = 10000);
  m.def("gcl_audit", [](int samples) { return audit_dict(gcl_audit(samples)); }, py::arg("samples") = 20);
  m.def("viscous_audit", [](int samples) { return audit_dict(viscous_audit(samples)); },
        py::arg("samples") = 1000);
}

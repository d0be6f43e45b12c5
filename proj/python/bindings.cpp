#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmexpect/errors.hpp"
#include "qmexpect/operators.hpp"
#include "qmexpect/report.hpp"
#include "qmexpect/specfun.hpp"
#include "qmexpect/states.hpp"
#include "qmexpect/suites.hpp"

namespace py = pybind11;
using namespace qmexpect;

namespace {

OperatorSpec operator_by_name(const std::string& name, double hbar) {
  if (name == "px") return ops::px(hbar);
  if (name == "pr") return ops::pr_dirac(hbar);
  if (name == "pr_naive") return ops::pr_naive(hbar);
  if (name == "l_phi") return ops::l_phi(hbar);
  if (name == "l_theta") return ops::l_theta(hbar);
  if (name == "l_theta_naive") return ops::l_theta_naive(hbar);
  if (name == "x") return ops::position();
  if (name.size() == 2 && name[0] == 'x' && name[1] >= '2' && name[1] <= '6') return ops::position_power(name[1] - '0');
  if (name.rfind("inv_r", 0) == 0 && name.size() == 6 && name[5] >= '1' && name[5] <= '4') return ops::inv_r(name[5] - '0');
  throw DomainError("unknown operator '" + name + "'");
}

QuadOptions options(std::size_t budget) {
  QuadOptions o;
  o.node_budget = budget;
  return o;
}

Parity parity_from(const std::string& s) {
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  throw DomainError("parity must be 'even' or 'odd'");
}

py::dict result_dict(const ExpectationResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["abs_error"] = r.abs_error;
  d["nodes_used"] = r.nodes_used;
  py::list parts;
  for (const auto& c : r.decomposition) {
    py::dict p;
    p["name"] = c.name;
    p["value"] = c.value;
    p["closed_form"] = c.closed_form ? py::cast(*c.closed_form) : py::none();
    parts.append(p);
  }
  d["decomposition"] = parts;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bound states, coordinate-correct operators and expectation values";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NoConvergence>(m, "NoConvergence", base.ptr());
  py::register_exception<NoSuchBranch>(m, "NoSuchBranch", base.ptr());
  py::register_exception<NoBoundState>(m, "NoBoundState", base.ptr());
  py::register_exception<UnsupportedOrder>(m, "UnsupportedOrder", base.ptr());
  py::register_exception<TruncationTooSmall>(m, "TruncationTooSmall", base.ptr());
  py::register_exception<WrongDomain>(m, "WrongDomain", base.ptr());
  py::register_exception<DivergentMoment>(m, "DivergentMoment", base.ptr());

  py::class_<BoundState>(m, "BoundState")
      .def_property_readonly("family", [](const BoundState& s) { return std::string(to_string(s.family())); })
      .def_property_readonly("label", &BoundState::label)
      .def_property_readonly("energy", &BoundState::energy)
      .def_property_readonly("norm_constant", &BoundState::norm_constant)
      .def_property_readonly("is_real", &BoundState::is_real)
      .def_property_readonly("expected_nodes", &BoundState::expected_nodes)
      .def_property_readonly("window", [](const BoundState& s) { return std::pair{s.domain().lower, s.domain().upper}; })
      .def("param", &BoundState::param, py::arg("name"))
      .def("__call__", [](const BoundState& s, double x) { return s.eval(x).value; }, py::arg("x"))
      .def("derivative", [](const BoundState& s, double x) { return s.eval(x).derivative; }, py::arg("x"))
      .def("__repr__", [](const BoundState& s) { return "<BoundState " + s.label() + ">"; });

  m.def("infinite_well", [](int n, const std::string& parity, double width) {
    return make_infinite_well(n, parity_from(parity), width);
  }, py::arg("n"), py::arg("parity") = "even", py::arg("width") = 1.0);
  m.def("infinite_well_shifted", [](int n, double width) { return make_infinite_well_shifted(n, width); },
        py::arg("n"), py::arg("width") = 1.0);
  m.def("finite_well", [](double depth, double half_width, const std::string& parity, int branch) {
    return make_finite_well(depth, half_width, parity_from(parity), branch);
  }, py::arg("depth") = 10.0, py::arg("half_width") = 1.0, py::arg("parity") = "even", py::arg("branch") = 0);
  m.def("delta_well", [](double strength) { return make_delta(strength); }, py::arg("strength") = 1.0);
  m.def("oscillator", [](int n, double omega) { return make_lho(n, omega); }, py::arg("n"), py::arg("omega") = 1.0);
  m.def("poschl_teller", [](int n, double lambda, double a) { return make_poschl_teller(n, lambda, a); },
        py::arg("n"), py::arg("lam"), py::arg("a") = 1.0);
  m.def("morse", [](int n, double lambda, double beta, double r0) { return make_morse(n, lambda, beta, r0); },
        py::arg("n"), py::arg("lam"), py::arg("beta") = 1.0, py::arg("r0") = 1.0);
  m.def("morse_bound_state_count", &morse_bound_state_count, py::arg("lam"));
  m.def("hydrogen_radial", [](int n, int L, double a0) { return make_hydrogen(n, L, 0, a0).radial; },
        py::arg("n"), py::arg("L"), py::arg("a0") = 1.0);
  m.def("angular_theta", [](int L, int M) { return make_angular_theta(L, M); }, py::arg("L"), py::arg("M"));
  m.def("angular_phi", [](int M) { return make_angular_phi(M); }, py::arg("M"));

  m.def("expectation", [](const BoundState& s, const std::string& op, std::size_t budget) {
    return result_dict(expectation(s, operator_by_name(op, s.units().hbar), options(budget)));
  }, py::arg("state"), py::arg("op"), py::arg("node_budget") = 2'000'000);
  m.def("hermiticity_defect", [](const BoundState& s, const std::string& op) {
    return hermiticity_defect(s, operator_by_name(op, s.units().hbar));
  }, py::arg("state"), py::arg("op"));
  m.def("momentum_moment", [](const BoundState& s, int power) { return momentum_moment(s, power).value; },
        py::arg("state"), py::arg("power"));
  m.def("norm", [](const BoundState& s) { return norm_integral(s).value; }, py::arg("state"));
  m.def("hamiltonian_residual", [](const BoundState& s) { return hamiltonian_residual(s); }, py::arg("state"));
  m.def("count_nodes", [](const BoundState& s) { return count_nodes(s); }, py::arg("state"));
  m.def("phi_moments", [](int M) {
    const auto p = phi_moments(M);
    py::dict d;
    d["mean_phi"] = p.mean_phi;
    d["mean_phi_sq"] = p.mean_phi_sq;
    d["delta_phi"] = p.delta_phi;
    d["mean_Lphi"] = p.mean_Lphi;
    d["delta_Lphi"] = p.delta_Lphi;
    d["product"] = p.product;
    d["uncertainty_violated"] = p.uncertainty_violated;
    return d;
  }, py::arg("M"));
  m.def("ladder_matrix_element", [](int m_, int n, double omega) { return ladder_matrix_element(m_, n, omega); },
        py::arg("m"), py::arg("n"), py::arg("omega") = 1.0);
  m.def("ladder_matrix_element_quadrature",
        [](int m_, int n, double omega) { return ladder_matrix_element_quadrature(m_, n, omega).value; },
        py::arg("m"), py::arg("n"), py::arg("omega") = 1.0);
  m.def("coherent_momentum", [](std::complex<double> alpha, int truncation) {
    const auto r = coherent_momentum_mean({alpha, truncation});
    return py::make_tuple(r.value, r.measured_constant);
  }, py::arg("alpha"), py::arg("truncation") = 128);
  m.def("heisenberg_hydrogen_rhs", [](int n, int L, double a0) { return result_dict(heisenberg_hydrogen_rhs(n, L, a0)); },
        py::arg("n"), py::arg("L"), py::arg("a0") = 1.0);

  m.def("digamma", &specfun::digamma, py::arg("x"));
  m.def("ln_gamma", &specfun::ln_gamma, py::arg("x"));
  m.def("hermite", [](int n, double q) { return specfun::hermite(n, q).value; }, py::arg("n"), py::arg("q"));
  m.def("assoc_laguerre", [](int n, double s, double xi) { return specfun::assoc_laguerre(n, s, xi).value; },
        py::arg("n"), py::arg("s"), py::arg("xi"));
  m.def("assoc_legendre", &specfun::assoc_legendre_value, py::arg("L"), py::arg("M"), py::arg("x"));

  m.def("suite_names", &suite_names);
  m.def("run_suite_json", [](const std::string& name, const std::map<std::string, std::string>& params,
                             std::optional<double> tol) {
    SuiteConfig cfg;
    for (const auto& [k, v] : params) cfg.set(k, v);
    if (tol) cfg.rel_tol = cfg.zero_tol = *tol;
    return to_json(run_suite(name, cfg));
  }, py::arg("name"), py::arg("params") = std::map<std::string, std::string>{}, py::arg("tol") = py::none());
}

// Python bindings for the phasewave core library: the special-function
// kernels, the envelope/branch/assembly pipeline, independent verification,
// the polar pair, and the job-configuration layer.
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "phasewave/assembly.hpp"
#include "phasewave/branches.hpp"
#include "phasewave/config.hpp"
#include "phasewave/errors.hpp"
#include "phasewave/polar.hpp"
#include "phasewave/scaling.hpp"
#include "phasewave/special_functions.hpp"
#include "phasewave/verification.hpp"

namespace py = pybind11;
using namespace phasewave;

PYBIND11_MODULE(_phasewave, m) {
  m.doc() = "Stationary two-component NLS solutions with inhomogeneous coupling";

  // All library failures derive from one root; surface them as one Python
  // exception type so callers can catch precisely.
  py::register_exception<Error>(m, "Error");

  // ---- special-function kernels -------------------------------------------
  m.def("complete_elliptic_K", &special::complete_elliptic_K, py::arg("k"),
        "Complete elliptic integral of the first kind, modulus convention.");
  m.def(
      "jacobi_sn_cn_dn",
      [](double u, double k) {
        const auto t = special::jacobi_sn_cn_dn(u, k);
        return py::make_tuple(t.sn, t.cn, t.dn);
      },
      py::arg("u"), py::arg("k"),
      "Jacobi elliptic functions (sn, cn, dn) at argument u, modulus k.");
  m.def("erf", &special::erf, py::arg("x"));
  m.def("weierstrass_p", &special::weierstrass_p, py::arg("y"), py::arg("g2"),
        py::arg("g3"), "Weierstrass P function on the real axis.");

  // ---- envelope (scaling) family -------------------------------------------
  py::class_<scaling::ScalingSpec>(m, "ScalingSpec")
      .def_readonly("C1", &scaling::ScalingSpec::C1)
      .def_readonly("C2", &scaling::ScalingSpec::C2)
      .def_readonly("C3", &scaling::ScalingSpec::C3)
      .def_readonly("omega", &scaling::ScalingSpec::omega)
      .def_readonly("mu", &scaling::ScalingSpec::mu);
  m.def("make_trig", &scaling::make_trig, py::arg("C1"), py::arg("C2"),
        py::arg("C3"), py::arg("omega"),
        "a(x) = C1 sin(omega x) + C2 cos(omega x) + C3.");
  m.def("make_exp", &scaling::make_exp, py::arg("C1"), py::arg("C2"),
        py::arg("C3"), py::arg("omega"),
        "a(x) = C1 e^{omega x} + C2 e^{-omega x} + C3.");
  m.def("make_gaussian", &scaling::make_gaussian, py::arg("mu"),
        "a(x) = e^{mu x^2}, mu < 0, with the quadratic potential mu^2 x^2.");
  m.def("make_constant", &scaling::make_constant, py::arg("mu"),
        "a(x) = 1 with chemical potential mu.");
  m.def(
      "eval_scaling",
      [](const scaling::ScalingSpec& s, double x) {
        const auto d = scaling::eval_scaling(s, x);
        return py::make_tuple(d.a, d.da, d.d2a, d.d3a);
      },
      py::arg("spec"), py::arg("x"),
      "Envelope value and first three derivatives at x.");
  m.def("chemical_potential", &scaling::chemical_potential, py::arg("spec"));
  m.def("potential", &scaling::potential, py::arg("spec"), py::arg("x"));
  m.def("canonical_y", &scaling::canonical_y, py::arg("spec"), py::arg("x"),
        "Stretched coordinate y(x) = integral_0^x ds / a(s).");
  m.def("first_integral_E_closed", &scaling::first_integral_E_closed,
        py::arg("spec"), "Closed-form conserved first integral E.");
  m.def("verify_scaling_ode", &scaling::verify_scaling_ode, py::arg("spec"),
        py::arg("xs"), "Max defect of the defining third-order envelope ODE.");

  // ---- branch profiles and coupling ----------------------------------------
  py::enum_<branches::BranchKind>(m, "BranchKind")
      .value("FiniteSn", branches::BranchKind::FiniteSn)
      .value("DarkSoliton", branches::BranchKind::DarkSoliton)
      .value("SingularSn", branches::BranchKind::SingularSn)
      .value("FiniteSnNegSigma", branches::BranchKind::FiniteSnNegSigma)
      .value("BrightSoliton", branches::BranchKind::BrightSoliton);
  py::class_<branches::RootTriple>(m, "RootTriple")
      .def(py::init<>())
      .def(py::init([](double w1, double w2, double w3) {
             return branches::RootTriple{w1, w2, w3};
           }),
           py::arg("W1"), py::arg("W2"), py::arg("W3"))
      .def_readwrite("W1", &branches::RootTriple::W1)
      .def_readwrite("W2", &branches::RootTriple::W2)
      .def_readwrite("W3", &branches::RootTriple::W3);
  py::class_<branches::Invariants>(m, "Invariants")
      .def_readonly("E", &branches::Invariants::E)
      .def_readonly("C0", &branches::Invariants::C0)
      .def_readonly("c", &branches::Invariants::c)
      .def_readonly("sigma", &branches::Invariants::sigma);
  py::class_<branches::Coupling>(m, "Coupling")
      .def_readonly("sigma", &branches::Coupling::sigma)
      .def_readonly("c", &branches::Coupling::c)
      .def_readonly("mixing_ratio", &branches::Coupling::mixing_ratio)
      .def_readonly("delta1", &branches::Coupling::delta1)
      .def_readonly("delta2", &branches::Coupling::delta2)
      .def_readonly("c1", &branches::Coupling::c1)
      .def_readonly("c2", &branches::Coupling::c2)
      .def_readonly("s1", &branches::Coupling::s1)
      .def_readonly("s2", &branches::Coupling::s2);
  py::class_<branches::BranchSolution>(m, "BranchSolution")
      .def_readonly("kind", &branches::BranchSolution::kind)
      .def_readonly("roots", &branches::BranchSolution::roots)
      .def_readonly("sigma", &branches::BranchSolution::sigma)
      .def_readonly("y0", &branches::BranchSolution::y0)
      .def_readonly("lam", &branches::BranchSolution::lambda)
      .def_readonly("k", &branches::BranchSolution::k);
  m.def("invariants_from_roots", &branches::invariants_from_roots,
        py::arg("roots"), py::arg("sigma"));
  m.def("roots_from_invariants", &branches::roots_from_invariants,
        py::arg("invariants"));
  m.def(
      "derive_coupling",
      [](const std::array<double, 4>& h, double c, int sigma) {
        return branches::derive_coupling(h, c, sigma);
      },
      py::arg("h"), py::arg("c"), py::arg("sigma"),
      "Amplitude split and phase strengths for a generic matrix h "
      "(row-major [h11, h12, h21, h22]).");
  m.def(
      "derive_coupling_degenerate",
      [](const std::array<double, 4>& h, double c, int sigma, double c1,
         double c2) { return branches::derive_coupling(h, c, sigma, c1, c2); },
      py::arg("h"), py::arg("c"), py::arg("sigma"), py::arg("c1"),
      py::arg("c2"),
      "Split for a rank-deficient matrix with user-chosen phase constants.");
  m.def("derive_coupling_zero_component",
        &branches::derive_coupling_zero_component, py::arg("h"), py::arg("c"),
        py::arg("sigma"), "Scalar reduction with the first component absent.");
  m.def("make_branch", &branches::make_branch, py::arg("kind"),
        py::arg("roots"), py::arg("sigma"), py::arg("y0") = 0.0);
  m.def(
      "eval_branch",
      [](const branches::BranchSolution& b, double y) {
        const auto [w, dw] = branches::eval_branch(b, y);
        return py::make_tuple(w, dw);
      },
      py::arg("branch"), py::arg("y"), "Profile W(y) and derivative W'(y).");
  m.def("branch_period", &branches::branch_period, py::arg("branch"),
        "Period in the stretched coordinate (inf for solitons).");

  // ---- assembled stationary pairs ------------------------------------------
  py::class_<assembly::StationarySolution>(m, "StationarySolution")
      .def_readonly("envelope", &assembly::StationarySolution::envelope)
      .def_readonly("coupling", &assembly::StationarySolution::coupling)
      .def_readonly("branch", &assembly::StationarySolution::branch)
      .def_readonly("invariants", &assembly::StationarySolution::invariants)
      .def_readonly("mu", &assembly::StationarySolution::mu)
      .def_readonly("phase_sign", &assembly::StationarySolution::phase_sign);
  m.def("make_stationary", &assembly::make_stationary, py::arg("envelope"),
        py::arg("coupling"), py::arg("branch"),
        py::arg("phase_sign") = std::array<int, 2>{1, 1});
  m.def("phase_strength", &assembly::phase_strength, py::arg("solution"),
        py::arg("j"), "Signed matter-current constant s_j (j = 0 or 1).");
  m.def(
      "amplitude_at",
      [](const assembly::StationarySolution& s, int j, double x) {
        const auto [r, dr] = assembly::amplitude_at(s, j, x);
        return py::make_tuple(r, dr);
      },
      py::arg("solution"), py::arg("j"), py::arg("x"));
  m.def("phase_at", &assembly::phase_at, py::arg("solution"), py::arg("j"),
        py::arg("x"));
  m.def("field_at", &assembly::field_at, py::arg("solution"), py::arg("t"),
        py::arg("x"), "Complex pair (psi1, psi2) at time t, position x.");
  py::class_<assembly::SolutionTable>(m, "SolutionTable")
      .def_readonly("x", &assembly::SolutionTable::x)
      .def_readonly("a", &assembly::SolutionTable::a)
      .def_readonly("y", &assembly::SolutionTable::y)
      .def_readonly("g11", &assembly::SolutionTable::g11)
      .def_readonly("g12", &assembly::SolutionTable::g12)
      .def_readonly("g21", &assembly::SolutionTable::g21)
      .def_readonly("g22", &assembly::SolutionTable::g22)
      .def_readonly("R1", &assembly::SolutionTable::R1)
      .def_readonly("R2", &assembly::SolutionTable::R2)
      .def_readonly("theta1", &assembly::SolutionTable::theta1)
      .def_readonly("theta2", &assembly::SolutionTable::theta2);
  m.def("sample_solution", &assembly::sample_solution, py::arg("solution"),
        py::arg("x_lo"), py::arg("x_hi"), py::arg("n"),
        "Endpoint-inclusive table of envelope, coefficients, amplitudes and "
        "phases.");

  // ---- independent verification --------------------------------------------
  py::class_<verification::ResidualReport>(m, "ResidualReport")
      .def_readonly("max_abs", &verification::ResidualReport::max_abs)
      .def_readonly("l2", &verification::ResidualReport::l2)
      .def_readonly("worst_x", &verification::ResidualReport::worst_x)
      .def_readonly("grid_size", &verification::ResidualReport::grid_size)
      .def_readonly("check_kind", &verification::ResidualReport::check_kind)
      .def_readonly("resolution_warning",
                    &verification::ResidualReport::resolution_warning);
  m.def("stationary_ode_residual", &verification::stationary_ode_residual,
        py::arg("solution"), py::arg("xs"),
        "Extended-precision pointwise defect of the reduced amplitude system.");
  py::class_<verification::PropagationReport>(m, "PropagationReport")
      .def_readonly("modulus_drift",
                    &verification::PropagationReport::modulus_drift)
      .def_readonly("norm_drift", &verification::PropagationReport::norm_drift)
      .def_readonly("phase_rate_error",
                    &verification::PropagationReport::phase_rate_error)
      .def_readonly("steps", &verification::PropagationReport::steps)
      .def_readonly("dt", &verification::PropagationReport::dt);
  m.def("propagate_and_compare", &verification::propagate_and_compare,
        py::arg("solution"), py::arg("x_lo"), py::arg("x_hi"), py::arg("n"),
        py::arg("dt"), py::arg("steps"),
        "Split-step propagation against the stationary prediction.");
  py::class_<verification::OracleReport>(m, "OracleReport")
      .def_readonly("max_profile_diff",
                    &verification::OracleReport::max_profile_diff)
      .def_readonly("max_invariant_drift",
                    &verification::OracleReport::max_invariant_drift)
      .def_readonly("samples", &verification::OracleReport::samples);
  m.def("oracle_compare", &verification::oracle_compare, py::arg("branch"),
        py::arg("y_lo"), py::arg("y_hi"), py::arg("samples"),
        "Runge-Kutta integration of the template oscillator vs the branch.");

  // ---- polar pair -----------------------------------------------------------
  py::class_<polar::PolarSpec>(m, "PolarSpec")
      .def_readonly("E", &polar::PolarSpec::E)
      .def_readonly("K1", &polar::PolarSpec::K1)
      .def_readonly("K2", &polar::PolarSpec::K2)
      .def_readonly("c1", &polar::PolarSpec::c1)
      .def_readonly("c2", &polar::PolarSpec::c2)
      .def_readonly("b", &polar::PolarSpec::b)
      .def_readonly("Delta", &polar::PolarSpec::Delta)
      .def_readonly("radial_roots", &polar::PolarSpec::radial_roots);
  m.def("make_polar", &polar::make_polar, py::arg("K1"), py::arg("K2"),
        py::arg("E"), py::arg("c1") = 0.0, py::arg("c2") = 0.0,
        py::arg("zeta0") = 0.0);
  m.def(
      "polar_components_at",
      [](const polar::PolarSpec& spec, double y) {
        const auto [u1, u2] = polar::components_at(spec, y);
        return py::make_tuple(u1, u2);
      },
      py::arg("spec"), py::arg("y"), "Component amplitudes (U1, U2) at y.");
  py::class_<polar::PolarReport>(m, "PolarReport")
      .def_readonly("max_component_residual",
                    &polar::PolarReport::max_component_residual)
      .def_readonly("max_angular_residual",
                    &polar::PolarReport::max_angular_residual)
      .def_readonly("max_radial_residual",
                    &polar::PolarReport::max_radial_residual)
      .def_readonly("worst_y", &polar::PolarReport::worst_y)
      .def_readonly("grid_size", &polar::PolarReport::grid_size);
  m.def("polar_reconstruct", &polar::polar_reconstruct, py::arg("spec"),
        py::arg("y_lo"), py::arg("y_hi"), py::arg("n"),
        "Residuals of the reconstructed isotropic pair on a grid.");

  // ---- configuration layer --------------------------------------------------
  py::class_<config::JobConfig>(m, "JobConfig")
      .def_readonly("omega", &config::JobConfig::omega)
      .def_readonly("mu", &config::JobConfig::mu)
      .def_readonly("sigma", &config::JobConfig::sigma)
      .def_readonly("roots", &config::JobConfig::roots)
      .def_readonly("coupling_mode", &config::JobConfig::coupling_mode)
      .def_property_readonly("grid", [](const config::JobConfig& c) {
        return py::make_tuple(c.grid.x_lo, c.grid.x_hi, c.grid.n);
      });
  m.def("parse_config", &config::parse_config, py::arg("text"),
        "Parse a key = value job description.");
  m.def("load_config", &config::load_config, py::arg("path"));
  m.def("canonical_text", &config::canonical_text, py::arg("config"),
        "Canonical serialization, derived constants as comments.");
  m.def("build_solution", &config::build_solution, py::arg("config"),
        "Assemble the stationary pair a configuration describes.");
  m.def("build_polar_spec", &config::build_polar, py::arg("config"));
  m.def("with_parameter", &config::with_parameter, py::arg("config"),
        py::arg("name"), py::arg("value"),
        "Copy of the job with one swept parameter re-derived and revalidated.");
}

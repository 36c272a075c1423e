#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rwqc/errors.hpp"
#include "rwqc/estimate.hpp"
#include "rwqc/fock.hpp"
#include "rwqc/io.hpp"
#include "rwqc/measures.hpp"
#include "rwqc/selftest.hpp"
#include "rwqc/special.hpp"
#include "rwqc/spectrum.hpp"

namespace py = pybind11;

using namespace rwqc;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Qubit-boson correlations across a smooth spacetime expansion";

  py::register_exception<validation_error>(m, "ValidationError",
                                           PyExc_ValueError);
  py::register_exception<numerical_error>(m, "NumericalError",
                                          PyExc_ArithmeticError);
  py::register_exception<out_of_regime_error>(m, "OutOfRegimeError",
                                              PyExc_ArithmeticError);
  py::register_exception<pole_error>(m, "PoleError", PyExc_ValueError);

  py::class_<spectrum::CosmologyParams>(m, "CosmologyParams")
      .def(py::init<>())
      .def(py::init([](double epsilon, double rho) {
             spectrum::CosmologyParams c;
             c.epsilon = epsilon;
             c.rho = rho;
             c.validate();
             return c;
           }),
           py::arg("epsilon"), py::arg("rho"))
      .def_readwrite("epsilon", &spectrum::CosmologyParams::epsilon)
      .def_readwrite("rho", &spectrum::CosmologyParams::rho);

  py::class_<spectrum::ModeParams>(m, "ModeParams")
      .def(py::init<>())
      .def(py::init([](double mass, double momentum, double chi) {
             spectrum::ModeParams p;
             p.mass = mass;
             p.momentum = momentum;
             p.chi = chi;
             p.validate();
             return p;
           }),
           py::arg("mass"), py::arg("momentum"),
           py::arg("chi") = 0.70710678118654752440)
      .def_readwrite("mass", &spectrum::ModeParams::mass)
      .def_readwrite("momentum", &spectrum::ModeParams::momentum)
      .def_readwrite("chi", &spectrum::ModeParams::chi);

  py::class_<spectrum::ModeFrequencies>(m, "ModeFrequencies")
      .def_readonly("omega_in", &spectrum::ModeFrequencies::omega_in)
      .def_readonly("omega_out", &spectrum::ModeFrequencies::omega_out)
      .def_readonly("omega_plus", &spectrum::ModeFrequencies::omega_plus)
      .def_readonly("omega_minus", &spectrum::ModeFrequencies::omega_minus);

  py::class_<spectrum::BogoliubovData>(m, "BogoliubovData")
      .def_readonly("log_abs_alpha", &spectrum::BogoliubovData::log_abs_alpha)
      .def_readonly("alpha_phase", &spectrum::BogoliubovData::alpha_phase)
      .def_readonly("log_abs_beta", &spectrum::BogoliubovData::log_abs_beta)
      .def_readonly("beta_phase", &spectrum::BogoliubovData::beta_phase)
      .def_readonly("gamma_sq", &spectrum::BogoliubovData::gamma_sq)
      .def_property_readonly("alpha", &spectrum::BogoliubovData::alpha)
      .def_property_readonly("beta", &spectrum::BogoliubovData::beta)
      .def("gamma_sq_gamma_route",
           &spectrum::BogoliubovData::gamma_sq_gamma_route)
      .def("normalization_residual",
           &spectrum::BogoliubovData::normalization_residual)
      .def_static("from_gamma_sq", &spectrum::BogoliubovData::from_gamma_sq,
                  py::arg("gamma_sq"));

  m.def("conformal_factor", &spectrum::conformal_factor, py::arg("eta"),
        py::arg("cosmo"));
  m.def("frequencies", &spectrum::frequencies, py::arg("mode"),
        py::arg("cosmo"));
  m.def("gamma_sq_closed", &spectrum::gamma_sq_closed, py::arg("frequencies"),
        py::arg("cosmo"));
  m.def("bogoliubov", &spectrum::bogoliubov, py::arg("mode"), py::arg("cosmo"));
  m.def("dlog_gamma_sq_dE", &spectrum::dlog_gamma_sq_dE, py::arg("mode"),
        py::arg("cosmo"));
  m.def("complex_gamma", &special::complex_gamma, py::arg("z"));
  m.def("log_complex_gamma", &special::log_gamma, py::arg("z"));

  py::enum_<measures::Pair>(m, "Pair")
      .value("QUBIT_BOSON", measures::Pair::QubitBoson)
      .value("QUBIT_ANTIBOSON", measures::Pair::QubitAntiboson);

  py::enum_<measures::Limit>(m, "Limit")
      .value("NEGATIVITY_QUBIT_BOSON", measures::Limit::NegativityQubitBoson)
      .value("MUTUAL_INFO_QUBIT_BOSON", measures::Limit::MutualInfoQubitBoson)
      .value("MUTUAL_INFO_QUBIT_ANTIBOSON",
             measures::Limit::MutualInfoQubitAntiboson)
      .value("BOSON_ENTROPY_GENERATED",
             measures::Limit::BosonEntropyGenerated);

  py::class_<measures::CorrelationReport>(m, "CorrelationReport")
      .def_readonly("gamma_sq", &measures::CorrelationReport::gamma_sq)
      .def_readonly("N_pk", &measures::CorrelationReport::N_pk)
      .def_readonly("N_pmk", &measures::CorrelationReport::N_pmk)
      .def_readonly("S_p", &measures::CorrelationReport::S_p)
      .def_readonly("S_k", &measures::CorrelationReport::S_k)
      .def_readonly("S_mk", &measures::CorrelationReport::S_mk)
      .def_readonly("S_pk", &measures::CorrelationReport::S_pk)
      .def_readonly("S_pmk", &measures::CorrelationReport::S_pmk)
      .def_readonly("I_pk", &measures::CorrelationReport::I_pk)
      .def_readonly("I_pmk", &measures::CorrelationReport::I_pmk)
      .def_readonly("monogamy_residual",
                    &measures::CorrelationReport::monogamy_residual)
      .def_readonly("terms_used", &measures::CorrelationReport::terms_used)
      .def_readonly("tail_bound", &measures::CorrelationReport::tail_bound)
      .def("as_dict", [](const measures::CorrelationReport& r) {
        py::dict d;
        d["gamma_sq"] = r.gamma_sq;
        d["N_pk"] = r.N_pk;
        d["N_pmk"] = r.N_pmk;
        d["S_p"] = r.S_p;
        d["S_k"] = r.S_k;
        d["S_mk"] = r.S_mk;
        d["S_pk"] = r.S_pk;
        d["S_pmk"] = r.S_pmk;
        d["I_pk"] = r.I_pk;
        d["I_pmk"] = r.I_pmk;
        d["monogamy_residual"] = r.monogamy_residual;
        d["terms_used"] = r.terms_used;
        d["tail_bound"] = r.tail_bound;
        return d;
      });

  m.def("pt_spectrum_pk", &measures::pt_spectrum_pk, py::arg("chi"),
        py::arg("bog"), py::arg("n_max"));
  m.def("pt_spectrum_pmk", &measures::pt_spectrum_pmk, py::arg("chi"),
        py::arg("bog"), py::arg("n_max"));
  m.def(
      "negativity_pk",
      [](double chi, const spectrum::BogoliubovData& bog, double tol) {
        return measures::negativity_pk(chi, bog, tol);
      },
      py::arg("chi"), py::arg("bog"), py::arg("tol") = 1e-10);
  m.def("negativity_pmk", &measures::negativity_pmk, py::arg("chi"),
        py::arg("bog"), py::arg("tol") = 1e-10);
  m.def(
      "entropies",
      [](double chi, const spectrum::BogoliubovData& bog, double tol) {
        const auto e = measures::entropies(chi, bog, tol);
        py::dict d;
        d["S_p"] = e.S_p;
        d["S_k"] = e.S_k;
        d["S_mk"] = e.S_mk;
        d["S_pk"] = e.S_pk;
        d["S_pmk"] = e.S_pmk;
        return d;
      },
      py::arg("chi"), py::arg("bog"), py::arg("tol") = 1e-10);
  m.def("mutual_information", &measures::mutual_information, py::arg("chi"),
        py::arg("bog"), py::arg("pair"), py::arg("tol") = 1e-10);
  m.def("asymptote", &measures::asymptote, py::arg("quantity"), py::arg("chi"));
  m.def("report", &measures::report, py::arg("mode"), py::arg("cosmo"),
        py::arg("tol") = 1e-10);
  m.def("report_from_bogoliubov", &measures::report_from_bogoliubov,
        py::arg("chi"), py::arg("bog"), py::arg("tol") = 1e-10);
  m.def("qubit_entropy", &measures::qubit_entropy, py::arg("chi"));

  py::class_<fock::TruncationPolicy>(m, "TruncationPolicy")
      .def(py::init<>())
      .def_readwrite("cutoff", &fock::TruncationPolicy::cutoff)
      .def_readwrite("tail_tol", &fock::TruncationPolicy::tail_tol)
      .def_readwrite("hard_cap", &fock::TruncationPolicy::hard_cap);

  py::class_<fock::OracleReport>(m, "OracleReport")
      .def_readonly("N_pk", &fock::OracleReport::N_pk)
      .def_readonly("pmk_pt_trace_norm", &fock::OracleReport::pmk_pt_trace_norm)
      .def_readonly("S_p", &fock::OracleReport::S_p)
      .def_readonly("S_k", &fock::OracleReport::S_k)
      .def_readonly("S_mk", &fock::OracleReport::S_mk)
      .def_readonly("S_pk", &fock::OracleReport::S_pk)
      .def_readonly("S_pmk", &fock::OracleReport::S_pmk)
      .def_readonly("I_pk", &fock::OracleReport::I_pk)
      .def_readonly("I_pmk", &fock::OracleReport::I_pmk)
      .def_readonly("cutoff", &fock::OracleReport::cutoff)
      .def_readonly("norm", &fock::OracleReport::norm);

  m.def("oracle_report", &fock::oracle_report, py::arg("chi"), py::arg("bog"),
        py::arg("policy") = fock::TruncationPolicy{});

  py::enum_<estimate::ObservableKind>(m, "ObservableKind")
      .value("GAMMA_SQ", estimate::ObservableKind::GammaSq)
      .value("MUTUAL_INFO_QUBIT_ANTIBOSON",
             estimate::ObservableKind::MutualInfoQubitAntiboson)
      .value("BOSON_ENTROPY", estimate::ObservableKind::BosonEntropy);

  py::class_<estimate::Observation>(m, "Observation")
      .def(py::init([](double momentum, double value,
                       estimate::ObservableKind kind) {
             return estimate::Observation{momentum, value, kind};
           }),
           py::arg("momentum"), py::arg("value"),
           py::arg("kind") = estimate::ObservableKind::GammaSq)
      .def_readwrite("momentum", &estimate::Observation::momentum)
      .def_readwrite("value", &estimate::Observation::value)
      .def_readwrite("kind", &estimate::Observation::kind);

  py::class_<estimate::ObservationSet>(m, "ObservationSet")
      .def(py::init<>())
      .def_readwrite("records", &estimate::ObservationSet::records)
      .def_readwrite("mass", &estimate::ObservationSet::mass)
      .def_readwrite("chi", &estimate::ObservationSet::chi)
      .def_readwrite("noise_scale", &estimate::ObservationSet::noise_scale)
      .def("validate", &estimate::ObservationSet::validate);

  py::class_<estimate::EstimationResult>(m, "EstimationResult")
      .def_readonly("epsilon_hat", &estimate::EstimationResult::epsilon_hat)
      .def_readonly("rho_hat", &estimate::EstimationResult::rho_hat)
      .def_readonly("residual_norm", &estimate::EstimationResult::residual_norm)
      .def_readonly("iterations", &estimate::EstimationResult::iterations)
      .def_readonly("converged", &estimate::EstimationResult::converged)
      .def_readonly("covariance", &estimate::EstimationResult::covariance);

  m.def("gamma_sq_small_mass", &estimate::gamma_sq_small_mass, py::arg("mode"),
        py::arg("epsilon"));
  m.def("rho_from_spectrum", &estimate::rho_from_spectrum, py::arg("energy"),
        py::arg("gamma_sq"), py::arg("dlog_gamma_sq_dE"));
  m.def("finite_difference", &estimate::finite_difference, py::arg("f"),
        py::arg("x"), py::arg("rel_step") = 1e-4);
  m.def("forward_observable", &estimate::forward_observable, py::arg("kind"),
        py::arg("momentum"), py::arg("mass"), py::arg("chi"),
        py::arg("epsilon"), py::arg("rho"), py::arg("series_tol") = 1e-10);
  m.def(
      "fit_parameters",
      [](const estimate::ObservationSet& obs, double epsilon0, double rho0) {
        return estimate::fit_parameters(obs, epsilon0, rho0);
      },
      py::arg("observations"), py::arg("epsilon0"), py::arg("rho0"));
  m.def("synthesize", &estimate::synthesize, py::arg("epsilon"),
        py::arg("rho"), py::arg("mass"), py::arg("momenta"), py::arg("kind"),
        py::arg("chi") = 0.70710678118654752440, py::arg("noise_scale") = 0.0,
        py::arg("seed") = 0);

  m.attr("__version__") = "0.1.0";
}

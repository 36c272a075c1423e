#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "rwqc/spectrum.hpp"

namespace rwqc::estimate {

enum class ObservableKind {
  GammaSq,                   // |beta/alpha|^2
  MutualInfoQubitAntiboson,  // I(qubit, antiboson)
  BosonEntropy,              // S(rho_boson)
};

struct Observation {
  double momentum = 0.0;
  double value = 0.0;
  ObservableKind kind = ObservableKind::GammaSq;
};

// Measurements at known mass; chi enters the forward model for the
// entropy-type observables.
struct ObservationSet {
  std::vector<Observation> records;
  double mass = 0.05;
  double chi = 0.70710678118654752440;
  double noise_scale = 0.0;

  void validate() const;
  int distinct_momenta() const;
};

struct FitOptions {
  int max_iterations = 200;
  double step_tol = 1e-10;
  double grad_tol = 1e-10;
  double series_tol = 1e-10;
  // Central-difference step in log-parameter space.  Kept well above the
  // series truncation floor so difference quotients stay smooth.
  double jacobian_step = 1e-4;
  double max_step = 2.0;  // per-iteration cap on the log-space step length
  // Seed the local optimizer from the best point of a coarse log grid over
  // [1e-3, 1e3]^2 (plus the caller's initialization).  The forward model
  // saturates for rho far above every mode frequency, which leaves a
  // near-flat valley a purely local method can wander into.
  bool prescan = true;
};

struct EstimationResult {
  double epsilon_hat = 0.0;
  double rho_hat = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  // sigma^2 (J^T J)^{-1} in log-parameter coordinates; NaN when singular.
  std::array<std::array<double, 2>, 2> covariance{};
};

// Small-mass closed form eps m^2 / (2 (m^2 + k^2)).  Valid as stated only in
// the sudden regime; see the regression tests for the mapped validity region.
double gamma_sq_small_mass(const spectrum::ModeParams& mode, double epsilon);

// pi E sqrt((1 + gamma_sq)/(-E dlog_gamma_sq_dE - 4)).  Throws
// rwqc::out_of_regime_error carrying the denominator when it is not positive.
double rho_from_spectrum(double energy, double gamma_sq,
                         double dlog_gamma_sq_dE);

// Central difference with relative step; non-finite values propagate.
double finite_difference(const std::function<double(double)>& f, double x,
                         double rel_step = 1e-4);

// Exact forward model for one observation.
double forward_observable(ObservableKind kind, double momentum, double mass,
                          double chi, double epsilon, double rho,
                          double series_tol = 1e-10);

// Damped Gauss-Newton over (log eps, log rho) with relative residuals.
// Throws rwqc::validation_error for degenerate data (< 2 distinct momenta).
EstimationResult fit_parameters(const ObservationSet& obs, double epsilon0,
                                double rho0, const FitOptions& options = {});

// Noiseless or multiplicative-Gaussian-noise synthetic observations from the
// exact forward model; deterministic for a given seed.
ObservationSet synthesize(double epsilon, double rho, double mass,
                          const std::vector<double>& momenta,
                          ObservableKind kind, double chi, double noise_scale,
                          std::uint64_t seed);

}  // namespace rwqc::estimate

#pragma once

#include <complex>

namespace rwqc::spectrum {

// Smooth expansion profile of the two-dimensional toy universe.
struct CosmologyParams {
  double epsilon = 10.0;  // total expansion volume, >= 0 (0 = flat limit)
  double rho = 10.0;      // expansion rate, > 0

  void validate() const;
};

// One scalar-field mode plus the initial qubit weight.
struct ModeParams {
  double mass = 1.0;      // >= 0
  double momentum = 1.0;  // >= 0, not both zero with mass
  double chi = 0.70710678118654752440;  // initial-state weight in [0, 1]

  void validate() const;
};

struct ModeFrequencies {
  double omega_in;     // sqrt(k^2 + m^2)
  double omega_out;    // sqrt(k^2 + m^2 (1 + 2 eps))
  double omega_plus;   // (omega_out + omega_in)/2
  double omega_minus;  // (omega_out - omega_in)/2, computed cancellation-free
};

// In/out mode mixing coefficients.  The moduli are kept in log space so the
// overflow regime (sinh arguments of order 1e5) still yields finite,
// meaningful values; gamma_sq carries the canonical sinh closed form.
struct BogoliubovData {
  double log_abs_alpha = 0.0;
  double alpha_phase = 0.0;
  double log_abs_beta = -1.0 / 0.0;  // -inf marks beta == 0
  double beta_phase = 0.0;
  double gamma_sq = 0.0;  // |beta/alpha|^2 in [0, 1)

  std::complex<double> alpha() const;
  std::complex<double> beta() const;

  // |beta/alpha|^2 recomputed from the Gamma-function log moduli.
  double gamma_sq_gamma_route() const;
  // |alpha|^2 - |beta|^2 - 1, evaluated from the Gamma-route moduli.
  double normalization_residual() const;
  // |alpha|^2 and |beta|^2 from gamma_sq via |alpha|^2 = 1/(1 - gamma_sq).
  double abs_alpha_sq() const;
  double abs_beta_sq() const;

  // A real coefficient pair carrying the given particle content; handy for
  // driving the Fock oracle at a prescribed gamma_sq.
  static BogoliubovData from_gamma_sq(double gamma_sq);
};

// C(eta) = 1 + epsilon (1 + tanh(rho eta)); increasing, bounded in [1, 1+2eps].
double conformal_factor(double eta, const CosmologyParams& cosmo);

// Throws rwqc::validation_error when mass = momentum = 0.
ModeFrequencies frequencies(const ModeParams& mode, const CosmologyParams& cosmo);

// sinh^2(pi omega_minus / rho) / sinh^2(pi omega_plus / rho), log-space.
double gamma_sq_closed(const ModeFrequencies& freq, const CosmologyParams& cosmo);

// Full coefficients through the complex Gamma quotients; the omega_minus = 0
// branch (flat or massless mode) returns alpha = 1, beta = 0 analytically.
BogoliubovData bogoliubov(const ModeParams& mode, const CosmologyParams& cosmo);

// d ln(gamma_sq) / dE at fixed mass, E = omega_in varied through the momentum.
// Analytic form used as the oracle for finite-difference checks and for the
// expansion-rate diagnostic.  Requires mass > 0 and epsilon > 0.
double dlog_gamma_sq_dE(const ModeParams& mode, const CosmologyParams& cosmo);

}  // namespace rwqc::spectrum

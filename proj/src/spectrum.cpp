#include "rwqc/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rwqc/errors.hpp"
#include "rwqc/special.hpp"

namespace rwqc::spectrum {

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;
}  // namespace

void CosmologyParams::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw validation_error("epsilon must be finite and >= 0, got " +
                           std::to_string(epsilon));
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw validation_error("rho must be finite and > 0, got " +
                           std::to_string(rho));
  }
}

void ModeParams::validate() const {
  if (!(mass >= 0.0) || !std::isfinite(mass)) {
    throw validation_error("mass must be finite and >= 0, got " +
                           std::to_string(mass));
  }
  if (!(momentum >= 0.0) || !std::isfinite(momentum)) {
    throw validation_error("momentum must be finite and >= 0, got " +
                           std::to_string(momentum));
  }
  if (mass == 0.0 && momentum == 0.0) {
    throw validation_error("mass and momentum must not both be zero");
  }
  if (!(chi >= 0.0 && chi <= 1.0)) {
    throw validation_error("chi must lie in [0, 1], got " + std::to_string(chi));
  }
}

std::complex<double> BogoliubovData::alpha() const {
  return std::polar(std::exp(log_abs_alpha), alpha_phase);
}

std::complex<double> BogoliubovData::beta() const {
  if (std::isinf(log_abs_beta) && log_abs_beta < 0.0) {
    return {0.0, 0.0};
  }
  return std::polar(std::exp(log_abs_beta), beta_phase);
}

double BogoliubovData::gamma_sq_gamma_route() const {
  if (std::isinf(log_abs_beta) && log_abs_beta < 0.0) {
    return 0.0;
  }
  return std::exp(2.0 * (log_abs_beta - log_abs_alpha));
}

double BogoliubovData::normalization_residual() const {
  // |alpha|^2 (1 - gamma^2) - 1 with everything from the Gamma route.
  const double g2 = gamma_sq_gamma_route();
  return std::expm1(2.0 * log_abs_alpha + std::log1p(-g2));
}

double BogoliubovData::abs_alpha_sq() const { return 1.0 / (1.0 - gamma_sq); }

double BogoliubovData::abs_beta_sq() const {
  return gamma_sq / (1.0 - gamma_sq);
}

BogoliubovData BogoliubovData::from_gamma_sq(double gamma_sq) {
  if (!(gamma_sq >= 0.0 && gamma_sq < 1.0)) {
    throw validation_error("gamma_sq must lie in [0, 1), got " +
                           std::to_string(gamma_sq));
  }
  BogoliubovData out;
  out.gamma_sq = gamma_sq;
  out.log_abs_alpha = -0.5 * std::log1p(-gamma_sq);
  out.log_abs_beta = gamma_sq == 0.0
                         ? -std::numeric_limits<double>::infinity()
                         : 0.5 * (std::log(gamma_sq) - std::log1p(-gamma_sq));
  return out;
}

double conformal_factor(double eta, const CosmologyParams& cosmo) {
  cosmo.validate();
  return 1.0 + cosmo.epsilon * (1.0 + std::tanh(cosmo.rho * eta));
}

ModeFrequencies frequencies(const ModeParams& mode, const CosmologyParams& cosmo) {
  mode.validate();
  cosmo.validate();
  const double m = mode.mass, k = mode.momentum;
  ModeFrequencies f;
  f.omega_in = std::hypot(k, m);
  f.omega_out = std::sqrt(k * k + m * m * (1.0 + 2.0 * cosmo.epsilon));
  f.omega_plus = 0.5 * (f.omega_out + f.omega_in);
  // omega_out^2 - omega_in^2 = 2 eps m^2 exactly; dividing by the sum avoids
  // the cancellation that kills (omega_out - omega_in)/2 when eps m^2 is tiny.
  f.omega_minus = cosmo.epsilon * m * m / (f.omega_out + f.omega_in);
  return f;
}

double gamma_sq_closed(const ModeFrequencies& freq, const CosmologyParams& cosmo) {
  cosmo.validate();
  if (freq.omega_minus == 0.0) {
    return 0.0;
  }
  const double a = kPi / cosmo.rho;
  const double lg2 = 2.0 * (special::log_sinh(a * freq.omega_minus) -
                            special::log_sinh(a * freq.omega_plus));
  return std::exp(lg2);
}

BogoliubovData bogoliubov(const ModeParams& mode, const CosmologyParams& cosmo) {
  const ModeFrequencies f = frequencies(mode, cosmo);
  BogoliubovData out;
  if (f.omega_minus == 0.0) {
    // Flat spacetime or massless (conformally invariant) mode: the Gamma
    // quotients are singular but the physical limit is alpha = 1, beta = 0.
    return out;
  }
  const double rho = cosmo.rho;
  const double y_in = f.omega_in / rho;
  const double y_out = f.omega_out / rho;
  const double y_p = f.omega_plus / rho;
  const double y_m = f.omega_minus / rho;
  const cplx i(0.0, 1.0);

  // Gamma at pure-imaginary arguments via the recurrence
  // Gamma(iy) = Gamma(1 + iy)/(iy); every Lanczos evaluation then sits at
  // Re(z) = 1, keeping this route independent of the sinh closed form.
  const auto lg = [](cplx z) { return special::log_gamma(z); };
  const cplx lg_in = lg(1.0 - i * y_in);
  const cplx lg_out_m = lg(1.0 - i * y_out) - std::log(-i * y_out);
  const cplx lg_out_p = lg(1.0 + i * y_out) - std::log(i * y_out);
  const cplx lg_p1 = lg(1.0 - i * y_p);
  const cplx lg_p0 = lg_p1 - std::log(-i * y_p);
  const cplx lg_m1 = lg(1.0 + i * y_m);
  const cplx lg_m0 = lg_m1 - std::log(i * y_m);

  const double pref = 0.5 * std::log(f.omega_out / f.omega_in);
  const cplx log_alpha = pref + lg_in + lg_out_m - lg_p1 - lg_p0;
  const cplx log_beta = pref + lg_in + lg_out_p - lg_m1 - lg_m0;

  out.log_abs_alpha = log_alpha.real();
  out.alpha_phase = std::remainder(log_alpha.imag(), 2.0 * kPi);
  out.log_abs_beta = log_beta.real();
  out.beta_phase = std::remainder(log_beta.imag(), 2.0 * kPi);
  out.gamma_sq = gamma_sq_closed(f, cosmo);
  return out;
}

double dlog_gamma_sq_dE(const ModeParams& mode, const CosmologyParams& cosmo) {
  mode.validate();
  cosmo.validate();
  if (!(mode.mass > 0.0) || !(cosmo.epsilon > 0.0)) {
    throw validation_error(
        "dlog_gamma_sq_dE requires mass > 0 and epsilon > 0");
  }
  const ModeFrequencies f = frequencies(mode, cosmo);
  const double a = kPi / cosmo.rho;
  return -(2.0 * a / f.omega_out) *
         (special::coth_weighted(a, f.omega_minus) +
          special::coth_weighted(a, f.omega_plus));
}

}  // namespace rwqc::spectrum

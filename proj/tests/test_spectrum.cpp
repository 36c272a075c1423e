#include "rwqc/spectrum.hpp"

#include <cmath>
#include <random>
#include <tuple>

#include "doctest.h"
#include "rwqc/errors.hpp"
#include "rwqc/selftest.hpp"

using namespace rwqc::spectrum;

namespace {

ModeParams mode_of(double m, double k, double chi = 0.70710678118654752440) {
  ModeParams p;
  p.mass = m;
  p.momentum = k;
  p.chi = chi;
  return p;
}

CosmologyParams cosmo_of(double eps, double rho) {
  CosmologyParams c;
  c.epsilon = eps;
  c.rho = rho;
  return c;
}

}  // namespace

TEST_CASE("conformal factor endpoints and canonical value") {
  const auto cosmo = cosmo_of(10.0, 10.0);
  CHECK(conformal_factor(0.0, cosmo) == doctest::Approx(11.0).epsilon(1e-15));
  CHECK(conformal_factor(-1e3, cosmo) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(conformal_factor(1e3, cosmo) == doctest::Approx(21.0).epsilon(1e-14));
  // flat spacetime stays flat
  const auto flat = cosmo_of(0.0, 3.0);
  CHECK(conformal_factor(-2.0, flat) == 1.0);
  CHECK(conformal_factor(5.0, flat) == 1.0);
}

TEST_CASE("conformal factor is monotone and bounded") {
  const auto cosmo = cosmo_of(3.5, 0.7);
  double prev = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double eta = -20.0 + 0.4 * i;
    const double c = conformal_factor(eta, cosmo);
    CHECK(c >= 1.0);
    CHECK(c <= 1.0 + 2.0 * cosmo.epsilon);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("frequencies by direct substitution") {
  const auto f = frequencies(mode_of(1.0, 1.0), cosmo_of(10.0, 10.0));
  CHECK(f.omega_in == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(f.omega_out == doctest::Approx(std::sqrt(22.0)).epsilon(1e-15));
  CHECK(f.omega_plus ==
        doctest::Approx(0.5 * (std::sqrt(22.0) + std::sqrt(2.0))).epsilon(1e-15));
  CHECK(f.omega_minus ==
        doctest::Approx(0.5 * (std::sqrt(22.0) - std::sqrt(2.0))).epsilon(1e-13));

  // massless mode is untouched by the expansion
  const auto g = frequencies(mode_of(0.0, 2.0), cosmo_of(7.0, 1.0));
  CHECK(g.omega_in == 2.0);
  CHECK(g.omega_out == 2.0);
  CHECK(g.omega_minus == 0.0);

  // no expansion
  const auto h = frequencies(mode_of(1.0, 1.0), cosmo_of(0.0, 10.0));
  CHECK(h.omega_in == h.omega_out);
  CHECK(h.omega_minus == 0.0);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((void)frequencies(mode_of(0.0, 0.0), cosmo_of(1.0, 1.0)),
                  rwqc::validation_error);
  CHECK_THROWS_AS((void)frequencies(mode_of(-1.0, 1.0), cosmo_of(1.0, 1.0)),
                  rwqc::validation_error);
  CHECK_THROWS_AS((void)frequencies(mode_of(1.0, 1.0), cosmo_of(-0.1, 1.0)),
                  rwqc::validation_error);
  CHECK_THROWS_AS((void)frequencies(mode_of(1.0, 1.0), cosmo_of(1.0, 0.0)),
                  rwqc::validation_error);
  ModeParams bad = mode_of(1.0, 1.0);
  bad.chi = 1.5;
  CHECK_THROWS_AS(bad.validate(), rwqc::validation_error);
}

TEST_CASE("cancellation-free omega_minus") {
  // eps m^2 tiny against k^2: the naive difference would lose ~10 digits.
  const auto f = frequencies(mode_of(1e-2, 1e2), cosmo_of(1e-2, 1.0));
  const double exact = 1e-2 * 1e-4 / (f.omega_out + f.omega_in);
  CHECK(f.omega_minus == doctest::Approx(exact).epsilon(1e-14));
  CHECK(f.omega_minus > 0.0);
}

TEST_CASE("flat and massless coefficients are trivial") {
  const std::tuple<double, double, double> trivial_cases[] = {
      {1.0, 1.0, 0.0}, {0.0, 1.0, 10.0}};
  for (const auto& [m, k, eps] : trivial_cases) {
    const auto bog = bogoliubov(mode_of(m, k), cosmo_of(eps, 10.0));
    CHECK(bog.gamma_sq == 0.0);
    CHECK(bog.alpha() == std::complex<double>(1.0, 0.0));
    CHECK(bog.beta() == std::complex<double>(0.0, 0.0));
    CHECK(bog.normalization_residual() == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("canonical point against the high-precision reference") {
  const auto bog = bogoliubov(mode_of(1.0, 1.0), cosmo_of(10.0, 10.0));
  CHECK(bog.gamma_sq ==
        doctest::Approx(0.23343878689342494).epsilon(1e-13));
  CHECK(bog.gamma_sq_gamma_route() ==
        doctest::Approx(0.23343878689342494).epsilon(1e-12));
  const auto a = bog.alpha();
  const auto b = bog.beta();
  CHECK(a.real() == doctest::Approx(1.1420013012563906).epsilon(1e-11));
  CHECK(a.imag() == doctest::Approx(-0.018981287901006263).epsilon(1e-9));
  CHECK(b.real() == doctest::Approx(0.55154563565415396).epsilon(1e-11));
  CHECK(b.imag() == doctest::Approx(0.018018688979097369).epsilon(1e-9));
  CHECK(std::abs(bog.normalization_residual()) < 1e-12);
  CHECK(bog.abs_alpha_sq() ==
        doctest::Approx(1.0 / (1.0 - bog.gamma_sq)).epsilon(1e-15));
}

TEST_CASE("closed form matches the Gamma route across the grid") {
  std::mt19937_64 rng(11);
  double worst_norm = 0.0, worst_route = 0.0;
  for (int i = 0; i < 300; ++i) {
    const double eps = rwqc::selftest::log_uniform(rng, 1e-2, 1e2);
    const double rho = rwqc::selftest::log_uniform(rng, 1e-2, 1e2);
    const double m = rwqc::selftest::log_uniform(rng, 1e-2, 1e2);
    const double k = rwqc::selftest::log_uniform(rng, 1e-2, 1e2);
    const auto bog = bogoliubov(mode_of(m, k), cosmo_of(eps, rho));
    CHECK(bog.gamma_sq >= 0.0);
    CHECK(bog.gamma_sq < 1.0);
    CHECK(std::isfinite(bog.log_abs_alpha));
    worst_norm = std::max(worst_norm, std::abs(bog.normalization_residual()));
    worst_route = std::max(
        worst_route, std::abs(bog.gamma_sq_gamma_route() - bog.gamma_sq));
  }
  CHECK(worst_norm < 1e-10);
  CHECK(worst_route < 1e-10);
}

TEST_CASE("overflow regime stays finite and in range") {
  // sinh arguments near 2.5e5: raw coefficients overflow, logs must not.
  const auto bog = bogoliubov(mode_of(100.0, 100.0), cosmo_of(100.0, 0.01));
  CHECK(std::isfinite(bog.log_abs_alpha));
  CHECK(std::isfinite(bog.log_abs_beta));
  CHECK(bog.gamma_sq >= 0.0);
  CHECK(bog.gamma_sq < 1.0);
  CHECK(std::abs(bog.normalization_residual()) < 1e-10);

  // the worst corner of the whole supported box: the Gamma-route log moduli
  // reach ~2e5 and their rounding dominates the normalization residual
  const auto corner = bogoliubov(mode_of(100.0, 0.01), cosmo_of(100.0, 0.01));
  CHECK(std::abs(corner.normalization_residual()) < 1e-10);
}

TEST_CASE("gamma_sq grows with expansion volume and dies at large momentum") {
  const auto cosmo = cosmo_of(1.0, 1.0);
  double prev = -1.0;
  for (double eps : {0.0, 0.1, 1.0, 3.0, 10.0, 30.0, 100.0}) {
    const double g2 =
        gamma_sq_closed(frequencies(mode_of(1.0, 1.0), cosmo_of(eps, 1.0)), cosmo_of(eps, 1.0));
    CHECK(g2 >= prev);
    prev = g2;
  }
  prev = 2.0;
  for (double k : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
    const double g2 = gamma_sq_closed(
        frequencies(mode_of(1.0, k), cosmo_of(10.0, 10.0)), cosmo_of(10.0, 10.0));
    CHECK(g2 <= prev);
    prev = g2;
  }
  CHECK(prev < 1e-8);
}

TEST_CASE("sinh ratio approaches 1 from below as the frequencies merge") {
  CosmologyParams cosmo = cosmo_of(1.0, 2.0);
  ModeFrequencies f;
  f.omega_plus = 3.0;
  double prev = 0.0;
  for (double delta : {1e-1, 1e-3, 1e-6, 1e-9}) {
    f.omega_minus = f.omega_plus * (1.0 - delta);
    f.omega_in = f.omega_plus - f.omega_minus;
    f.omega_out = f.omega_plus + f.omega_minus;
    const double g2 = gamma_sq_closed(f, cosmo);
    CHECK(g2 < 1.0);
    CHECK(g2 > prev);
    prev = g2;
  }
  CHECK(prev > 1.0 - 1e-7);
}

TEST_CASE("from_gamma_sq builds a consistent real pair") {
  const auto bog = BogoliubovData::from_gamma_sq(0.4);
  CHECK(bog.gamma_sq == 0.4);
  CHECK(bog.abs_alpha_sq() == doctest::Approx(1.0 / 0.6).epsilon(1e-15));
  CHECK(std::abs(bog.normalization_residual()) < 1e-14);
  CHECK(bog.alpha().imag() == 0.0);
  CHECK(bog.beta().imag() == 0.0);
  CHECK_THROWS_AS((void)BogoliubovData::from_gamma_sq(1.0),
                  rwqc::validation_error);
  CHECK_THROWS_AS((void)BogoliubovData::from_gamma_sq(-0.1),
                  rwqc::validation_error);
}

TEST_CASE("analytic energy derivative of the log spectrum") {
  // matches a central finite difference of the closed form
  const auto mode = mode_of(0.01, 0.5);
  const auto cosmo = cosmo_of(0.5, 2.0);
  const double E = std::hypot(mode.mass, mode.momentum);
  const double h = 1e-5 * E;
  auto lg2_at = [&](double energy) {
    ModeParams m2 = mode;
    m2.momentum = std::sqrt(energy * energy - mode.mass * mode.mass);
    return std::log(gamma_sq_closed(frequencies(m2, cosmo), cosmo));
  };
  const double fd = (lg2_at(E + h) - lg2_at(E - h)) / (2.0 * h);
  const double an = dlog_gamma_sq_dE(mode, cosmo);
  CHECK(an == doctest::Approx(-8.7874579573085038).epsilon(1e-10));
  CHECK(fd == doctest::Approx(an).epsilon(1e-8));
  CHECK_THROWS_AS((void)dlog_gamma_sq_dE(mode_of(0.0, 1.0), cosmo),
                  rwqc::validation_error);
}

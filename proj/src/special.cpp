#include "rwqc/special.hpp"

#include <cmath>
#include <numbers>

#include "rwqc/errors.hpp"

namespace rwqc::special {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
// 0.5*log(2*pi)
constexpr double kHalfLog2Pi = 0.91893853320467274178;

// Lanczos g = 7, 9-term coefficient set.
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(std::complex<double> z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Valid for Re(z) >= 0.5.
std::complex<double> log_gamma_lanczos(std::complex<double> z) {
  z -= 1.0;
  std::complex<double> series = kLanczos[0];
  for (int i = 1; i < 9; ++i) {
    series += kLanczos[i] / (z + static_cast<double>(i));
  }
  const std::complex<double> t = z + 7.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

std::complex<double> log_sin_pi(std::complex<double> z) {
  const double y = z.imag();
  // Reduce the real part mod 2 so sin(pi x) keeps full precision for large x.
  const double xr = std::remainder(z.real(), 2.0);
  if (std::abs(y) < 30.0) {
    return std::log(std::sin(kPi * std::complex<double>(xr, y)));
  }
  // sin(pi(x+iy)) = (e^{pi|y|}/2) [sin(pi x)(1+q) +/- i cos(pi x)(1-q)],
  // q = e^{-2 pi |y|}; the sign follows Im z.
  const double ay = std::abs(y);
  const double q = std::exp(-2.0 * kPi * ay);
  const double sp = std::sin(kPi * xr);
  const double cp = std::cos(kPi * xr);
  std::complex<double> core(sp * (1.0 + q), std::copysign(cp * (1.0 - q), y));
  return kPi * ay - kLn2 + std::log(core);
}

std::complex<double> log_gamma(std::complex<double> z) {
  if (is_nonpositive_integer(z)) {
    throw pole_error("log_gamma: pole at non-positive integer " +
                     std::to_string(z.real()));
  }
  if (z.real() >= 0.5) {
    return log_gamma_lanczos(z);
  }
  // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
  return std::log(kPi) - log_sin_pi(z) - log_gamma_lanczos(1.0 - z);
}

std::complex<double> complex_gamma(std::complex<double> z) {
  return std::exp(log_gamma(z));
}

double log_sinh(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_sinh: argument must be positive");
  }
  if (x < 30.0) {
    return std::log(std::sinh(x));
  }
  return x - kLn2 + std::log1p(-std::exp(-2.0 * x));
}

double coth_weighted(double a, double w) {
  if (!(a > 0.0) || w < 0.0) {
    throw std::domain_error("coth_weighted: need a > 0, w >= 0");
  }
  const double x = a * w;
  if (x == 0.0) {
    return 1.0 / a;
  }
  if (x < 1e-4) {
    // w coth(aw) = 1/a + a w^2/3 - a^3 w^4/45 + ...
    return 1.0 / a + a * w * w / 3.0;
  }
  if (x > 20.0) {
    return w;
  }
  return w / std::tanh(x);
}

}  // namespace rwqc::special

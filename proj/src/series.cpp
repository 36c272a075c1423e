#include "rwqc/series.hpp"

#include <cmath>
#include <stdexcept>

namespace rwqc::series {

namespace {
void check(double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw std::domain_error("series tails require x in [0, 1)");
  }
}
}  // namespace

double tail_geom(double x, long long n) {
  check(x);
  return std::pow(x, static_cast<double>(n + 1)) / (1.0 - x);
}

double tail_geom_j(double x, long long n) {
  check(x);
  const double N = static_cast<double>(n);
  const double p = std::pow(x, static_cast<double>(n + 1));
  return p * ((N + 1.0) - N * x) / ((1.0 - x) * (1.0 - x));
}

double tail_geom_j2(double x, long long n) {
  check(x);
  const double N = static_cast<double>(n);
  const double p = std::pow(x, static_cast<double>(n + 1));
  const double num =
      (N + 1.0) * (N + 1.0) - (2.0 * N * N + 2.0 * N - 1.0) * x + N * N * x * x;
  const double q = 1.0 - x;
  return p * num / (q * q * q);
}

}  // namespace rwqc::series

#pragma once

#include <complex>

namespace rwqc::special {

// log Gamma(z) for complex z, Lanczos approximation (g = 7, 9 terms) with the
// reflection formula for Re(z) < 0.5.  The real part is accurate to ~1e-13
// relative; the imaginary part is the phase of Gamma(z) up to multiples of
// 2*pi.  Throws rwqc::pole_error at non-positive integers.
std::complex<double> log_gamma(std::complex<double> z);

// Gamma(z) = exp(log_gamma(z)).
std::complex<double> complex_gamma(std::complex<double> z);

// log(sin(pi z)) without overflow for large |Im z|; imaginary part mod 2*pi.
std::complex<double> log_sin_pi(std::complex<double> z);

// log(sinh(x)) for x > 0 without overflow.
double log_sinh(double x);

// w * coth(a*w) for a > 0, w >= 0, with the finite limit 1/a as w -> 0.
double coth_weighted(double a, double w);

}  // namespace rwqc::special

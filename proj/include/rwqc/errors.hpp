#pragma once

#include <stdexcept>
#include <string>

namespace rwqc {

// Invalid user-supplied parameters. CLI exit code 1.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal consistency check failed. CLI exit code 2.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The Fock cutoff cap was reached before the tail bound held.
class truncation_error : public numerical_error {
 public:
  truncation_error(const std::string& msg, double achieved_norm_, int cutoff_)
      : numerical_error(msg), achieved_norm(achieved_norm_), cutoff(cutoff_) {}
  double achieved_norm;
  int cutoff;
};

// Gamma function evaluated at a non-positive integer.
class pole_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The expansion-rate recovery radicand is non-positive at this point.
class out_of_regime_error : public std::runtime_error {
 public:
  out_of_regime_error(const std::string& msg, double denominator_)
      : std::runtime_error(msg), denominator(denominator_) {}
  double denominator;
};

}  // namespace rwqc

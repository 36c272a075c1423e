#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace rwqc::selftest {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed deviation
  double threshold = 0.0;  // what it must stay under
  std::string detail;      // failing parameter points, if any
};

struct Options {
  int points = 100;          // randomized grid size for the cheap identities
  int oracle_points = 20;    // dense-oracle comparison points
  int monogamy_points = 100;
  int mc_seeds = 10;         // noisy-estimation Monte-Carlo repetitions
  int cutoff_cap = 512;      // hard cap for the dense-oracle truncation
  std::uint64_t seed = 20260810;
};

// Deterministic uniform in [0,1) built from the raw generator bits.
double uniform01(std::mt19937_64& rng);
// Log-uniform sample in [lo, hi].
double log_uniform(std::mt19937_64& rng, double lo, double hi);

std::vector<CheckResult> run(const Options& options);

// One formatted line per check; byte-stable for a given seed.
std::string format_result(const CheckResult& r);

}  // namespace rwqc::selftest

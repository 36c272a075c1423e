#pragma once

#include <Eigen/Dense>
#include <complex>
#include <initializer_list>
#include <vector>

#include "rwqc/spectrum.hpp"

namespace rwqc::fock {

enum class Subsystem { Qubit = 0, Boson = 1, Antiboson = 2 };

// How far the out-region number expansion is carried.  The cutoff applies to
// the antiboson occupation (the series index); it auto-escalates until the
// discarded-weight bound
//   gamma_sq^(N+1) (N+2) / (1 - gamma_sq)^2 <= tail_tol
// holds, or the hard cap is reached.
struct TruncationPolicy {
  int cutoff = 16;
  double tail_tol = 1e-12;
  int hard_cap = 512;

  void validate() const;
};

// Dense amplitude table over (qubit, boson, antiboson).  Only entries with
// n_antiboson in {n_boson, n_boson - 1} are populated by construction.
struct PureState {
  int cutoff = 0;         // max antiboson occupation retained
  int boson_dim = 0;      // cutoff + 2
  int antiboson_dim = 0;  // cutoff + 1
  std::vector<std::complex<double>> amp;

  std::complex<double>& at(int q, int nk, int nmk);
  const std::complex<double>& at(int q, int nk, int nmk) const;
  double norm_sq() const;
  int dim(Subsystem s) const;
};

// Hermitian matrix over a labeled truncated basis.
struct DensityMatrix {
  std::vector<Subsystem> subsystems;  // kept, in canonical order
  std::vector<int> dims;
  std::vector<std::vector<int>> basis;  // row index -> occupation tuple
  Eigen::MatrixXcd mat;

  // Hermiticity deviation must stay under herm_tol and the trace within
  // trace_tol of 1; throws rwqc::numerical_error otherwise.
  void validate(double herm_tol = 1e-12, double trace_tol = 1e-9) const;
};

// Smallest cutoff satisfying the policy bound, or -1 if the cap is too small.
int choose_cutoff(double gamma_sq, const TruncationPolicy& policy);

// Builds the joint qubit-boson-antiboson state in the out basis.  Throws
// rwqc::truncation_error (carrying the achievable norm) when the hard cap is
// reached before the tail bound holds.
PureState build_joint_state(const spectrum::ModeParams& mode,
                            const spectrum::BogoliubovData& bog,
                            const TruncationPolicy& policy);

DensityMatrix partial_trace(const PureState& state,
                            std::initializer_list<Subsystem> keep);

// Eigenvalues of the partial transpose over one subsystem of a two-subsystem
// density matrix; ascending order.
std::vector<double> pt_eigenvalues(const DensityMatrix& dm,
                                   Subsystem transpose_over);
double pt_trace_norm(const DensityMatrix& dm, Subsystem transpose_over);
// log2 of the trace norm, clamped at zero from below.
double pt_negativity(const DensityMatrix& dm, Subsystem transpose_over);

// -Tr[rho log2 rho]; eigenvalues below -1e-10 signal an internal error.
double von_neumann_entropy(const DensityMatrix& dm);

double mutual_information_numeric(const PureState& state, Subsystem a,
                                  Subsystem b);

// Every observable the closed forms predict, computed by dense linear
// algebra only.
struct OracleReport {
  double N_pk = 0.0;
  double pmk_pt_trace_norm = 0.0;
  double S_p = 0.0;
  double S_k = 0.0;
  double S_mk = 0.0;
  double S_pk = 0.0;
  double S_pmk = 0.0;
  double I_pk = 0.0;
  double I_pmk = 0.0;
  int cutoff = 0;
  double norm = 0.0;
};

OracleReport oracle_report(double chi, const spectrum::BogoliubovData& bog,
                           const TruncationPolicy& policy);

}  // namespace rwqc::fock

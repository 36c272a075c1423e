#pragma once

#include <vector>

#include "rwqc/spectrum.hpp"

namespace rwqc::measures {

// Which reduced pair a correlation refers to.
enum class Pair { QubitBoson, QubitAntiboson };

// Quantities with stated closed-form limits (k -> infinity, mass -> 0 or
// mass -> infinity all share the same value per quantity).
enum class Limit {
  NegativityQubitBoson,     // log2(1 + 2 chi sqrt(1-chi^2))
  MutualInfoQubitBoson,     // 2 S(rho_p)
  MutualInfoQubitAntiboson, // 0
  BosonEntropyGenerated,    // 0 (excess of S(rho_k) over its flat baseline)
};

struct SeriesDiagnostics {
  long long terms_used = 0;
  double tail_bound = 0.0;
};

struct Entropies {
  double S_p = 0.0;
  double S_k = 0.0;
  double S_mk = 0.0;
  double S_pk = 0.0;
  double S_pmk = 0.0;
  SeriesDiagnostics diag;
};

// All correlation quantities at one parameter point.
struct CorrelationReport {
  double gamma_sq = 0.0;
  double N_pk = 0.0;
  double N_pmk = 0.0;
  double S_p = 0.0;
  double S_k = 0.0;
  double S_mk = 0.0;
  double S_pk = 0.0;
  double S_pmk = 0.0;
  double I_pk = 0.0;
  double I_pmk = 0.0;
  double monogamy_residual = 0.0;
  long long terms_used = 0;
  double tail_bound = 0.0;
};

// Binary entropy of {chi^2, 1-chi^2} in bits.
double qubit_entropy(double chi);

// Partial-transpose spectrum of the qubit-boson reduction: the isolated
// eigenvalue chi^2/|alpha|^2 followed by the (plus, minus) pair for each
// n = 0..n_max.  The n/|beta|^2 factors are resolved analytically so the
// flat limit beta -> 0 needs no special casing by the caller.
std::vector<double> pt_spectrum_pk(double chi,
                                   const spectrum::BogoliubovData& bog,
                                   int n_max);

// Same for the qubit-antiboson reduction: the isolated eigenvalue
// (1-chi^2)/|alpha|^4 followed by the pair for each n.  Every entry is
// non-negative, which is why that pair never carries negativity.
std::vector<double> pt_spectrum_pmk(double chi,
                                    const spectrum::BogoliubovData& bog,
                                    int n_max);

// Logarithmic negativity between qubit and boson; strictly positive for
// chi in (0,1).  Series terms and the certified tail both fall below
// tol * accumulated sum before termination.
double negativity_pk(double chi, const spectrum::BogoliubovData& bog,
                     double tol, SeriesDiagnostics* diag = nullptr);

// Logarithmic negativity between qubit and antiboson: identically zero.
// The closed-form trace-norm sum is evaluated and must equal 1 within tol,
// otherwise rwqc::numerical_error is thrown.
double negativity_pmk(double chi, const spectrum::BogoliubovData& bog,
                      double tol = 1e-10);

// The five entropies; S_mk = S_pk and S_pmk = S_k hold as expression
// identities because the tripartite state is pure.
Entropies entropies(double chi, const spectrum::BogoliubovData& bog,
                    double tol);

double mutual_information(double chi, const spectrum::BogoliubovData& bog,
                          Pair pair, double tol);

// Closed-form limit values; chi in [0, 1].
double asymptote(Limit quantity, double chi);

// Full report for one parameter point.
CorrelationReport report(const spectrum::ModeParams& mode,
                         const spectrum::CosmologyParams& cosmo, double tol);

// Same report driven directly by a coefficient pair (used by sweeps that
// already computed the spectrum data, and by tests).
CorrelationReport report_from_bogoliubov(double chi,
                                         const spectrum::BogoliubovData& bog,
                                         double tol);

}  // namespace rwqc::measures

#include "rwqc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rwqc/errors.hpp"
#include "rwqc/series.hpp"

namespace rwqc::measures {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr long long kMaxTerms = 10'000'000;

double h_bits(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

void check_chi(double chi) {
  if (!(chi >= 0.0 && chi <= 1.0)) {
    throw validation_error("chi must lie in [0, 1], got " + std::to_string(chi));
  }
}

void check_gamma_sq(double g2) {
  if (!(g2 >= 0.0 && g2 < 1.0)) {
    throw validation_error("gamma_sq must lie in [0, 1), got " +
                           std::to_string(g2));
  }
}

[[noreturn]] void series_diverged() {
  throw numerical_error(
      "series did not converge within the term cap; gamma_sq is too close "
      "to 1 for a certified evaluation");
}

struct TemplateSum {
  double value = 0.0;
  long long terms = 0;
  double tail = 0.0;
};

// sum_{i>=0} h(x^i (A + B(i+1))) with a certified tail bound.  The bound uses
// -ln nu_i <= i ln(1/x) + max(0, -ln(A+B)) together with the closed-form
// polynomial-geometric tails.
TemplateSum entropy_template(double A, double B, double x, double tol) {
  TemplateSum out;
  if (A + B <= 0.0) {
    return out;
  }
  const double L1 = x > 0.0 ? -std::log(x) : 0.0;
  const double L0 = std::max(0.0, -std::log(A + B));
  double xp = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (long long i = 0; i < kMaxTerms; ++i) {
    const double nu = xp * (A + B * static_cast<double>(i + 1));
    const double term = h_bits(nu);
    out.value += term;
    out.terms = i + 1;
    if (x == 0.0) {
      out.tail = 0.0;
      return out;
    }
    if (i >= 1 && nu < prev) {
      const double t0 = series::tail_geom(x, i);
      const double t1 = series::tail_geom_j(x, i);
      const double t2 = series::tail_geom_j2(x, i);
      out.tail =
          (L1 * (A * t1 + B * (t2 + t1)) + L0 * (A * t0 + B * (t1 + t0))) / kLn2;
      const double scale = std::max(out.value, 1e-300);
      if (term <= tol * scale && out.tail <= tol * scale) {
        return out;
      }
    }
    prev = nu;
    xp *= x;
  }
  series_diverged();
}

}  // namespace

double qubit_entropy(double chi) {
  check_chi(chi);
  const double c2 = chi * chi;
  return h_bits(c2) + h_bits(1.0 - c2);
}

std::vector<double> pt_spectrum_pk(double chi,
                                   const spectrum::BogoliubovData& bog,
                                   int n_max) {
  check_chi(chi);
  const double x = bog.gamma_sq;
  check_gamma_sq(x);
  const double c2 = chi * chi;
  const double s2 = 1.0 - c2;
  const double P = 1.0 - x;  // 1/|alpha|^2
  const double Y = 4.0 * c2 * s2 * P;

  std::vector<double> ev;
  ev.reserve(2 * (n_max + 1) + 1);
  ev.push_back(c2 * P);

  // gamma^{2n} (gamma^2 chi^2 + n (1-chi^2)/|beta|^2) rewritten with
  // gamma^{2n}/|beta|^2 = gamma^{2(n-1)}/|alpha|^2, so beta = 0 stays regular.
  double xp = 1.0;       // x^n
  double xp_m1 = 0.0;    // x^{n-1}, defined as 1 at n = 1 even for x = 0
  for (int n = 0; n <= n_max; ++n) {
    const double w = c2 * xp * x + (n >= 1 ? s2 * P * static_cast<double>(n) * xp_m1 : 0.0);
    const double r = std::sqrt(w * w + xp * xp * Y);
    ev.push_back(0.5 * P * (w + r));
    ev.push_back(0.5 * P * (w - r));
    xp_m1 = (n == 0) ? 1.0 : xp_m1 * x;
    xp *= x;
  }
  return ev;
}

std::vector<double> pt_spectrum_pmk(double chi,
                                    const spectrum::BogoliubovData& bog,
                                    int n_max) {
  check_chi(chi);
  const double x = bog.gamma_sq;
  check_gamma_sq(x);
  const double c2 = chi * chi;
  const double s2 = 1.0 - c2;
  const double P = 1.0 - x;
  const double xP = x * P;  // |beta|^2/|alpha|^4

  std::vector<double> ev;
  ev.reserve(2 * (n_max + 1) + 1);
  ev.push_back(s2 * P * P);
  double xp = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    const double D = c2 + static_cast<double>(n + 2) * s2 * xP;
    const double radicand =
        std::max(0.0, D * D - 4.0 * c2 * s2 * xP);  // >= 0 up to rounding
    const double r = std::sqrt(radicand);
    ev.push_back(0.5 * P * xp * (D + r));
    ev.push_back(0.5 * P * xp * (D - r));
    xp *= x;
  }
  return ev;
}

double negativity_pk(double chi, const spectrum::BogoliubovData& bog,
                     double tol, SeriesDiagnostics* diag) {
  check_chi(chi);
  const double x = bog.gamma_sq;
  check_gamma_sq(x);
  if (chi == 0.0 || chi == 1.0) {
    if (diag) *diag = {};
    return 0.0;
  }
  const double c2 = chi * chi;
  const double s2 = 1.0 - c2;
  const double P = 1.0 - x;
  const double Y = 4.0 * c2 * s2 * P;
  const double sqrtY = std::sqrt(Y);

  double sum = c2 * P;
  double xp = 1.0, xp_m1 = 0.0;
  long long terms = 0;
  double tail = 0.0;
  for (long long n = 0; n < kMaxTerms; ++n) {
    const double w =
        c2 * xp * x + (n >= 1 ? s2 * P * static_cast<double>(n) * xp_m1 : 0.0);
    const double term = P * std::sqrt(w * w + xp * xp * Y);
    sum += term;
    terms = n + 1;
    if (x == 0.0 && n >= 1) {
      tail = 0.0;
      break;
    }
    if (n >= 1) {
      // term_j <= P (w_j + x^j sqrt(Y)); both pieces have closed tails.
      const double t0 = series::tail_geom(x, n);
      const double t1 = series::tail_geom_j(x, n);
      tail = P * (c2 * x * t0 + s2 * P * t1 / x + sqrtY * t0);
      if (term <= tol * sum && tail <= tol * sum) {
        break;
      }
    }
    if (n + 1 == kMaxTerms) series_diverged();
    xp_m1 = (n == 0) ? 1.0 : xp_m1 * x;
    xp *= x;
  }
  if (diag) {
    diag->terms_used = terms;
    diag->tail_bound = tail;
  }
  return std::log2(sum);
}

double negativity_pmk(double chi, const spectrum::BogoliubovData& bog,
                      double tol) {
  check_chi(chi);
  const double x = bog.gamma_sq;
  check_gamma_sq(x);
  const double c2 = chi * chi;
  const double s2 = 1.0 - c2;
  const double P = 1.0 - x;

  // Trace norm of the partially transposed qubit-antiboson matrix.  All PT
  // eigenvalues are non-negative, so the norm is the plain sum
  //   (1-chi^2)/|alpha|^4 + sum_n gamma^{2n}/|alpha|^2
  //                          (chi^2 + (n+2)(1-chi^2)|beta|^2/|alpha|^4)
  // which must come out as 1.  Summed to a tolerance well below the caller's
  // so the identity check is not limited by truncation.
  const double series_tol = std::min(tol * 1e-3, 1e-13);
  double sum = s2 * P * P;
  double xp = 1.0;
  for (long long n = 0; n < kMaxTerms; ++n) {
    const double term =
        xp * P * (c2 + static_cast<double>(n + 2) * s2 * x * P);
    sum += term;
    if (x == 0.0 && n >= 1) break;
    if (n >= 1) {
      const double t0 = series::tail_geom(x, n);
      const double t1 = series::tail_geom_j(x, n);
      const double tail = P * (c2 * t0 + s2 * x * P * (t1 + 2.0 * t0));
      if (term <= series_tol * sum && tail <= series_tol * sum) break;
    }
    if (n + 1 == kMaxTerms) series_diverged();
    xp *= x;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw numerical_error(
        "qubit-antiboson trace-norm sum deviates from 1 by " +
        std::to_string(sum - 1.0) + " (chi=" + std::to_string(chi) +
        ", gamma_sq=" + std::to_string(x) + ")");
  }
  return 0.0;
}

Entropies entropies(double chi, const spectrum::BogoliubovData& bog,
                    double tol) {
  check_chi(chi);
  const double x = bog.gamma_sq;
  check_gamma_sq(x);
  const double c2 = chi * chi;
  const double s2 = 1.0 - c2;
  const double P = 1.0 - x;

  Entropies out;
  out.S_p = h_bits(c2) + h_bits(s2);

  // Joint qubit-boson spectrum: x^n P (chi^2 + (n+1)(1-chi^2) P).
  const TemplateSum pk = entropy_template(P * c2, P * P * s2, x, tol);
  // Boson spectrum: c2 P at n = 0, then x^{n-1}(c2 P x + n s2 P^2).
  const TemplateSum k = entropy_template(c2 * P * x, s2 * P * P, x, tol);

  out.S_pk = pk.value;
  out.S_k = h_bits(c2 * P) + k.value;
  // The tripartite state is pure, and the corresponding spectra coincide
  // expression-by-expression.
  out.S_mk = out.S_pk;
  out.S_pmk = out.S_k;
  out.diag.terms_used = std::max(pk.terms, k.terms);
  out.diag.tail_bound = std::max(pk.tail, k.tail);
  return out;
}

double mutual_information(double chi, const spectrum::BogoliubovData& bog,
                          Pair pair, double tol) {
  check_chi(chi);
  if (chi == 0.0 || chi == 1.0) {
    return 0.0;  // product initial state carries no correlations
  }
  const Entropies e = entropies(chi, bog, tol);
  const double v = pair == Pair::QubitBoson ? e.S_p + e.S_k - e.S_pk
                                            : e.S_p + e.S_pk - e.S_k;
  return std::max(0.0, v);
}

double asymptote(Limit quantity, double chi) {
  check_chi(chi);
  switch (quantity) {
    case Limit::NegativityQubitBoson:
      return std::log2(1.0 + 2.0 * chi * std::sqrt(1.0 - chi * chi));
    case Limit::MutualInfoQubitBoson:
      return 2.0 * qubit_entropy(chi);
    case Limit::MutualInfoQubitAntiboson:
      return 0.0;
    case Limit::BosonEntropyGenerated:
      return 0.0;
  }
  throw validation_error("unknown limit selector");
}

CorrelationReport report_from_bogoliubov(double chi,
                                         const spectrum::BogoliubovData& bog,
                                         double tol) {
  check_chi(chi);
  check_gamma_sq(bog.gamma_sq);
  CorrelationReport r;
  r.gamma_sq = bog.gamma_sq;

  const Entropies e = entropies(chi, bog, tol);
  r.S_p = e.S_p;
  r.S_k = e.S_k;
  r.S_mk = e.S_mk;
  r.S_pk = e.S_pk;
  r.S_pmk = e.S_pmk;
  r.terms_used = e.diag.terms_used;
  r.tail_bound = e.diag.tail_bound;

  if (chi == 0.0 || chi == 1.0) {
    // Product initial state: every correlation measure vanishes identically.
    return r;
  }

  SeriesDiagnostics neg_diag;
  r.N_pk = negativity_pk(chi, bog, tol, &neg_diag);
  r.N_pmk = negativity_pmk(chi, bog, tol);
  r.I_pk = std::max(0.0, e.S_p + e.S_k - e.S_pk);
  r.I_pmk = std::max(0.0, e.S_p + e.S_pk - e.S_k);
  r.monogamy_residual = r.I_pk + r.I_pmk - 2.0 * r.S_p;
  r.terms_used = std::max(r.terms_used, neg_diag.terms_used);
  r.tail_bound = std::max(r.tail_bound, neg_diag.tail_bound);
  return r;
}

CorrelationReport report(const spectrum::ModeParams& mode,
                         const spectrum::CosmologyParams& cosmo, double tol) {
  const spectrum::BogoliubovData bog = spectrum::bogoliubov(mode, cosmo);
  return report_from_bogoliubov(mode.chi, bog, tol);
}

}  // namespace rwqc::measures

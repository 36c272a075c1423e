#include "rwqc/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "rwqc/errors.hpp"
#include "rwqc/measures.hpp"

namespace rwqc::estimate {

namespace {

constexpr double kPi = std::numbers::pi;

double residual_scale(double observed) {
  const double a = std::abs(observed);
  return a > 0.0 ? a : 1.0;
}

struct Residuals {
  std::vector<double> r;
  double cost = 0.0;  // 0.5 ||r||^2
};

Residuals residuals_at(const ObservationSet& obs, double log_eps,
                       double log_rho, double series_tol) {
  Residuals out;
  out.r.assign(obs.records.size(), 0.0);
  const double eps = std::exp(log_eps);
  const double rho = std::exp(log_rho);
  if (!std::isfinite(eps) || !std::isfinite(rho) || rho <= 0.0) {
    out.cost = std::numeric_limits<double>::infinity();
    return out;
  }
  for (std::size_t i = 0; i < obs.records.size(); ++i) {
    const Observation& o = obs.records[i];
    double f;
    try {
      f = forward_observable(o.kind, o.momentum, obs.mass, obs.chi, eps, rho,
                             series_tol);
    } catch (const std::exception&) {
      out.cost = std::numeric_limits<double>::infinity();
      return out;
    }
    const double r = (f - o.value) / residual_scale(o.value);
    out.r[i] = r;
    out.cost += 0.5 * r * r;
  }
  return out;
}

}  // namespace

void ObservationSet::validate() const {
  if (records.empty()) {
    throw validation_error("observation set is empty");
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw validation_error("observation mass must be finite and > 0");
  }
  if (!(chi >= 0.0 && chi <= 1.0)) {
    throw validation_error("chi must lie in [0, 1]");
  }
  if (noise_scale < 0.0) {
    throw validation_error("noise scale must be >= 0");
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Observation& o = records[i];
    if (!(o.momentum >= 0.0) || !std::isfinite(o.momentum)) {
      throw validation_error("record " + std::to_string(i) +
                             ": momentum must be finite and >= 0");
    }
    if (!std::isfinite(o.value)) {
      throw validation_error("record " + std::to_string(i) +
                             ": value must be finite");
    }
    if (o.kind == ObservableKind::GammaSq &&
        !(o.value >= 0.0 && o.value < 1.0)) {
      throw validation_error("record " + std::to_string(i) +
                             ": gamma_sq must lie in [0, 1), got " +
                             std::to_string(o.value));
    }
    if (o.kind != ObservableKind::GammaSq && o.value < 0.0) {
      throw validation_error("record " + std::to_string(i) +
                             ": entropic observables must be >= 0");
    }
  }
}

int ObservationSet::distinct_momenta() const {
  std::set<double> ks;
  for (const Observation& o : records) ks.insert(o.momentum);
  return static_cast<int>(ks.size());
}

double gamma_sq_small_mass(const spectrum::ModeParams& mode, double epsilon) {
  mode.validate();
  if (!(epsilon >= 0.0)) {
    throw validation_error("epsilon must be >= 0");
  }
  const double m2 = mode.mass * mode.mass;
  const double k2 = mode.momentum * mode.momentum;
  return epsilon * m2 / (2.0 * (m2 + k2));
}

double rho_from_spectrum(double energy, double gamma_sq,
                         double dlog_gamma_sq_dE) {
  if (!(energy > 0.0)) {
    throw validation_error("energy must be > 0");
  }
  if (!(gamma_sq >= 0.0 && gamma_sq < 1.0)) {
    throw validation_error("gamma_sq must lie in [0, 1)");
  }
  const double denom = -energy * dlog_gamma_sq_dE - 4.0;
  if (!(denom > 0.0)) {
    throw out_of_regime_error(
        "expansion-rate radicand is not positive (denominator " +
            std::to_string(denom) + ")",
        denom);
  }
  return kPi * energy * std::sqrt((1.0 + gamma_sq) / denom);
}

double finite_difference(const std::function<double(double)>& f, double x,
                         double rel_step) {
  if (!(rel_step > 0.0)) {
    throw validation_error("rel_step must be > 0");
  }
  const double h = rel_step * (x != 0.0 ? std::abs(x) : 1.0);
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double forward_observable(ObservableKind kind, double momentum, double mass,
                          double chi, double epsilon, double rho,
                          double series_tol) {
  spectrum::ModeParams mode;
  mode.mass = mass;
  mode.momentum = momentum;
  mode.chi = chi;
  spectrum::CosmologyParams cosmo;
  cosmo.epsilon = epsilon;
  cosmo.rho = rho;
  const double g2 = spectrum::gamma_sq_closed(frequencies(mode, cosmo), cosmo);
  switch (kind) {
    case ObservableKind::GammaSq:
      return g2;
    case ObservableKind::MutualInfoQubitAntiboson:
      return measures::mutual_information(
          chi, spectrum::BogoliubovData::from_gamma_sq(g2),
          measures::Pair::QubitAntiboson, series_tol);
    case ObservableKind::BosonEntropy:
      return measures::entropies(
                 chi, spectrum::BogoliubovData::from_gamma_sq(g2), series_tol)
          .S_k;
  }
  throw validation_error("unknown observable kind");
}

EstimationResult fit_parameters(const ObservationSet& obs, double epsilon0,
                                double rho0, const FitOptions& options) {
  obs.validate();
  if (obs.distinct_momenta() < 2) {
    throw validation_error(
        "degenerate fit: need >= 2 observations with distinct momenta for "
        "the two-parameter inversion");
  }
  if (!(epsilon0 > 0.0) || !(rho0 > 0.0)) {
    throw validation_error("initial epsilon and rho must be > 0");
  }

  const int n = static_cast<int>(obs.records.size());
  // Evaluate the model tighter than the fit tolerances so the truncation
  // floor never shows up in the difference quotients.
  const double model_tol = std::min(options.series_tol, 1e-12);
  double u0 = std::log(epsilon0);
  double u1 = std::log(rho0);
  Residuals cur = residuals_at(obs, u0, u1, model_tol);
  if (options.prescan) {
    const double lo = std::log(1e-3), hi = std::log(1e3);
    for (int i = 0; i < 13; ++i) {
      for (int j = 0; j < 13; ++j) {
        const double a = lo + i * (hi - lo) / 12.0;
        const double b = lo + j * (hi - lo) / 12.0;
        const Residuals r = residuals_at(obs, a, b, model_tol);
        if (r.cost < cur.cost) {
          u0 = a;
          u1 = b;
          cur = r;
        }
      }
    }
  }

  double J[2][2];  // J^T J
  double g[2];     // J^T r
  std::vector<double> col0(n), col1(n);

  auto fill_jacobian = [&](double a, double b) {
    const double h = options.jacobian_step;
    const Residuals rp0 = residuals_at(obs, a + h, b, model_tol);
    const Residuals rm0 = residuals_at(obs, a - h, b, model_tol);
    const Residuals rp1 = residuals_at(obs, a, b + h, model_tol);
    const Residuals rm1 = residuals_at(obs, a, b - h, model_tol);
    for (int i = 0; i < n; ++i) {
      col0[i] = (rp0.r[i] - rm0.r[i]) / (2.0 * h);
      col1[i] = (rp1.r[i] - rm1.r[i]) / (2.0 * h);
    }
    J[0][0] = J[0][1] = J[1][1] = 0.0;
    g[0] = g[1] = 0.0;
    for (int i = 0; i < n; ++i) {
      J[0][0] += col0[i] * col0[i];
      J[0][1] += col0[i] * col1[i];
      J[1][1] += col1[i] * col1[i];
      g[0] += col0[i] * cur.r[i];
      g[1] += col1[i] * cur.r[i];
    }
    J[1][0] = J[0][1];
  };

  EstimationResult res;
  double lambda = 1e-3;
  int iter = 0;
  bool converged = false;
  for (; iter < options.max_iterations && !converged; ++iter) {
    fill_jacobian(u0, u1);
    const double d0 = std::max(J[0][0], 1e-12);
    const double d1 = std::max(J[1][1], 1e-12);

    bool stepped = false;
    double step_norm = 0.0;
    for (int attempt = 0; attempt < 25; ++attempt) {
      const double a00 = J[0][0] + lambda * d0;
      const double a11 = J[1][1] + lambda * d1;
      const double a01 = J[0][1];
      const double det = a00 * a11 - a01 * a01;
      if (!(std::abs(det) > 1e-300)) {
        lambda *= 10.0;
        continue;
      }
      double s0 = (-g[0] * a11 + g[1] * a01) / det;
      double s1 = (-g[1] * a00 + g[0] * a01) / det;
      const double slen = std::hypot(s0, s1);
      if (slen > options.max_step) {
        s0 *= options.max_step / slen;
        s1 *= options.max_step / slen;
      }
      const Residuals trial = residuals_at(obs, u0 + s0, u1 + s1, model_tol);
      if (trial.cost < cur.cost ||
          (!std::isfinite(cur.cost) && std::isfinite(trial.cost))) {
        u0 += s0;
        u1 += s1;
        cur = trial;
        step_norm = std::hypot(s0, s1);
        lambda = std::max(lambda / 3.0, 1e-14);
        stepped = true;
        break;
      }
      lambda *= 5.0;
    }
    if (!stepped) {
      // No descent direction left at this damping; treat as stationary.
      step_norm = 0.0;
    }
    fill_jacobian(u0, u1);
    const double grad_norm = std::hypot(g[0], g[1]);
    if ((step_norm < options.step_tol && grad_norm < options.grad_tol) ||
        (!stepped && grad_norm < options.grad_tol)) {
      converged = true;
    }
    if (!stepped && !converged) {
      break;  // stalled without meeting the gradient test
    }
  }

  res.epsilon_hat = std::exp(u0);
  res.rho_hat = std::exp(u1);
  res.residual_norm = std::sqrt(2.0 * cur.cost);
  res.iterations = iter;
  res.converged = converged;

  fill_jacobian(u0, u1);
  const double det = J[0][0] * J[1][1] - J[0][1] * J[0][1];
  const double sigma2 = 2.0 * cur.cost / std::max(1, n - 2);
  if (std::abs(det) > 1e-300) {
    res.covariance[0][0] = sigma2 * J[1][1] / det;
    res.covariance[0][1] = -sigma2 * J[0][1] / det;
    res.covariance[1][0] = res.covariance[0][1];
    res.covariance[1][1] = sigma2 * J[0][0] / det;
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    res.covariance = {{{nan, nan}, {nan, nan}}};
  }
  return res;
}

ObservationSet synthesize(double epsilon, double rho, double mass,
                          const std::vector<double>& momenta,
                          ObservableKind kind, double chi, double noise_scale,
                          std::uint64_t seed) {
  if (momenta.empty()) {
    throw validation_error("need at least one momentum to synthesize");
  }
  spectrum::CosmologyParams cosmo;
  cosmo.epsilon = epsilon;
  cosmo.rho = rho;
  cosmo.validate();
  if (noise_scale < 0.0) {
    throw validation_error("noise scale must be >= 0");
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ObservationSet out;
  out.mass = mass;
  out.chi = chi;
  out.noise_scale = noise_scale;
  for (double k : momenta) {
    const double f = forward_observable(kind, k, mass, chi, epsilon, rho);
    double y = f;
    if (noise_scale > 0.0) {
      y = f * (1.0 + noise_scale * normal(rng));
      y = std::max(y, f * 1e-12);
      if (kind == ObservableKind::GammaSq) {
        y = std::min(y, std::nexttoward(1.0, 0.0));
      }
    }
    out.records.push_back({k, y, kind});
  }
  out.validate();
  return out;
}

}  // namespace rwqc::estimate

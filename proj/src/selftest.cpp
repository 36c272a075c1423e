#include "rwqc/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rwqc/estimate.hpp"
#include "rwqc/fock.hpp"
#include "rwqc/measures.hpp"
#include "rwqc/spectrum.hpp"

namespace rwqc::selftest {

namespace {

using spectrum::BogoliubovData;
using spectrum::CosmologyParams;
using spectrum::ModeParams;

constexpr double kChiHalf = 0.70710678118654752440;

struct SamplePoint {
  CosmologyParams cosmo;
  ModeParams mode;
};

SamplePoint sample_point(std::mt19937_64& rng) {
  SamplePoint p;
  p.cosmo.epsilon = log_uniform(rng, 1e-2, 1e2);
  p.cosmo.rho = log_uniform(rng, 1e-2, 1e2);
  p.mode.mass = log_uniform(rng, 1e-2, 1e2);
  p.mode.momentum = log_uniform(rng, 1e-2, 1e2);
  p.mode.chi = kChiHalf;
  return p;
}

std::string describe(const SamplePoint& p) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "eps=%.6g rho=%.6g m=%.6g k=%.6g chi=%.6g", p.cosmo.epsilon,
                p.cosmo.rho, p.mode.mass, p.mode.momentum, p.mode.chi);
  return buf;
}

struct Tracker {
  double worst = 0.0;
  std::string at;

  void update(double err, const std::string& where) {
    if (err > worst) {
      worst = err;
      at = where;
    }
  }
};

CheckResult finish(const std::string& name, const Tracker& t, double tol) {
  CheckResult r;
  r.name = name;
  r.worst = t.worst;
  r.threshold = tol;
  r.passed = t.worst <= tol;
  if (!r.passed) r.detail = "worst at " + t.at;
  return r;
}

bool nondecreasing(const std::vector<double>& v, double slack = 1e-12) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1] - slack) return false;
  }
  return true;
}

bool nonincreasing(const std::vector<double>& v, double slack = 1e-12) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1] + slack) return false;
  }
  return true;
}

}  // namespace

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(std::log(lo) + uniform01(rng) * (std::log(hi) - std::log(lo)));
}

std::vector<CheckResult> run(const Options& options) {
  std::vector<CheckResult> results;
  std::mt19937_64 rng(options.seed);
  const double tol_series = 1e-10;

  // --- coefficient identities over the random grid ---
  {
    Tracker norm, route;
    for (int i = 0; i < options.points; ++i) {
      const SamplePoint p = sample_point(rng);
      const BogoliubovData bog = spectrum::bogoliubov(p.mode, p.cosmo);
      norm.update(std::abs(bog.normalization_residual()), describe(p));
      route.update(std::abs(bog.gamma_sq_gamma_route() - bog.gamma_sq),
                   describe(p));
    }
    results.push_back(finish("bogoliubov-normalization", norm, 1e-10));
    results.push_back(finish("gamma-sq-route-equivalence", route, 1e-10));
  }

  // --- conformal factor bounds and monotonicity ---
  {
    Tracker t;
    for (int i = 0; i < 32; ++i) {
      CosmologyParams cosmo;
      cosmo.epsilon = log_uniform(rng, 1e-2, 1e2);
      cosmo.rho = log_uniform(rng, 1e-2, 1e2);
      double prev = -1.0;
      for (int j = 0; j <= 24; ++j) {
        const double eta = -12.0 + j;  // units of 1/rho
        const double c = spectrum::conformal_factor(eta / cosmo.rho, cosmo);
        double err = 0.0;
        if (c < 1.0) err = 1.0 - c;
        const double top = 1.0 + 2.0 * cosmo.epsilon;
        if (c > top) err = std::max(err, c - top);
        if (c < prev) err = std::max(err, prev - c);
        t.update(err, "epsilon=" + std::to_string(cosmo.epsilon));
        prev = c;
      }
    }
    results.push_back(finish("conformal-factor-bounds", t, 1e-12));
  }

  // --- gamma_sq monotone in epsilon, vanishing at large momentum ---
  {
    Tracker t;
    for (int i = 0; i < 16; ++i) {
      SamplePoint p = sample_point(rng);
      double prev = -1.0;
      bool ok = true;
      for (int j = 0; j < 16; ++j) {
        p.cosmo.epsilon = std::exp(std::log(1e-2) + j * (std::log(1e2) - std::log(1e-2)) / 15.0);
        const double g2 = spectrum::gamma_sq_closed(
            spectrum::frequencies(p.mode, p.cosmo), p.cosmo);
        if (g2 < prev - 1e-14) ok = false;
        prev = g2;
      }
      t.update(ok ? 0.0 : 1.0, describe(p));
    }
    for (int i = 0; i < 16; ++i) {
      SamplePoint p = sample_point(rng);
      p.mode.momentum = 1e4 * std::max(1.0, p.mode.mass);
      const double g2 = spectrum::gamma_sq_closed(
          spectrum::frequencies(p.mode, p.cosmo), p.cosmo);
      t.update(g2, describe(p));
    }
    results.push_back(finish("gamma-sq-monotone-and-vanishing", t, 1e-8));
  }

  // --- closed forms vs the dense Fock oracle ---
  {
    Tracker agree, pmk_norm, purity;
    fock::TruncationPolicy policy;
    policy.hard_cap = options.cutoff_cap;
    int accepted = 0;
    while (accepted < options.oracle_points) {
      const SamplePoint p = sample_point(rng);
      BogoliubovData bog = spectrum::bogoliubov(p.mode, p.cosmo);
      if (bog.gamma_sq > 0.9) continue;
      ++accepted;
      const measures::CorrelationReport rep =
          measures::report_from_bogoliubov(p.mode.chi, bog, tol_series);
      const fock::OracleReport orc = fock::oracle_report(p.mode.chi, bog, policy);
      const std::string where = describe(p);
      agree.update(std::abs(rep.N_pk - orc.N_pk), where + " [N_pk]");
      agree.update(std::abs(rep.S_p - orc.S_p), where + " [S_p]");
      agree.update(std::abs(rep.S_k - orc.S_k), where + " [S_k]");
      agree.update(std::abs(rep.S_mk - orc.S_mk), where + " [S_mk]");
      agree.update(std::abs(rep.S_pk - orc.S_pk), where + " [S_pk]");
      agree.update(std::abs(rep.S_pmk - orc.S_pmk), where + " [S_pmk]");
      agree.update(std::abs(rep.I_pk - orc.I_pk), where + " [I_pk]");
      agree.update(std::abs(rep.I_pmk - orc.I_pmk), where + " [I_pmk]");
      pmk_norm.update(std::abs(orc.pmk_pt_trace_norm - 1.0), where);
      purity.update(std::abs(orc.S_mk - orc.S_pk), where + " [S_mk=S_pk]");
      purity.update(std::abs(orc.S_pmk - orc.S_k), where + " [S_pmk=S_k]");
    }
    results.push_back(finish("oracle-agreement", agree, 1e-8));
    results.push_back(finish("antiboson-negativity-zero", pmk_norm, 1e-8));
    results.push_back(finish("purity-identities", purity, 1e-9));
  }

  // --- monogamy of mutual information ---
  {
    Tracker t;
    int accepted = 0;
    while (accepted < options.monogamy_points) {
      SamplePoint p = sample_point(rng);
      p.mode.chi = 0.05 + 0.9 * uniform01(rng);
      const BogoliubovData bog = spectrum::bogoliubov(p.mode, p.cosmo);
      if (bog.gamma_sq > 0.9) continue;
      ++accepted;
      const measures::CorrelationReport rep =
          measures::report_from_bogoliubov(p.mode.chi, bog, tol_series);
      t.update(std::abs(rep.monogamy_residual), describe(p));
      if (!(rep.S_k > rep.S_pk) && bog.gamma_sq > 0.0) {
        t.update(1.0, describe(p) + " [entropy ordering]");
      }
      if (!(rep.N_pk > 0.0) && p.mode.chi > 0.05 && p.mode.chi < 0.95) {
        t.update(1.0, describe(p) + " [persistence]");
      }
    }
    // canonical point sums to exactly twice the qubit entropy
    ModeParams mode;
    CosmologyParams cosmo;
    const measures::CorrelationReport rep = measures::report(mode, cosmo, tol_series);
    t.update(std::abs(rep.I_pk + rep.I_pmk - 2.0), "canonical point");
    results.push_back(finish("monogamy", t, 1e-8));
  }

  // --- stated limits ---
  {
    Tracker t;
    ModeParams mode;
    CosmologyParams cosmo;
    mode.momentum = 1e3;
    measures::CorrelationReport rep = measures::report(mode, cosmo, tol_series);
    t.update(std::abs(rep.N_pk - 1.0), "k=1e3 [N_pk]");
    t.update(std::abs(rep.I_pk - 2.0), "k=1e3 [I_pk]");
    t.update(rep.I_pmk, "k=1e3 [I_pmk]");
    t.update(std::abs(rep.S_k - rep.S_p), "k=1e3 [S_k excess]");
    results.push_back(finish("large-momentum-limits", t, 1e-4));

    Tracker tm;
    for (double m : {1e-3, 1e3}) {
      mode = ModeParams{};
      mode.mass = m;
      rep = measures::report(mode, cosmo, tol_series);
      tm.update(std::abs(rep.N_pk - 1.0), "m=" + std::to_string(m));
    }
    results.push_back(finish("mass-limits", tm, 1e-3));
  }

  // --- figure shapes on small in-memory grids ---
  {
    Tracker t;
    const int n = 20;
    std::vector<double> eps_grid(n), kval(n);
    for (int i = 0; i < n; ++i) {
      eps_grid[i] = std::exp(std::log(0.1) + i * (std::log(100.0) - std::log(0.1)) / (n - 1));
    }
    ModeParams mode;
    CosmologyParams cosmo;
    std::vector<double> N(n), I(n), Im(n), Sk(n);
    for (int i = 0; i < n; ++i) {
      cosmo.epsilon = eps_grid[i];
      const auto rep = measures::report(mode, cosmo, tol_series);
      N[i] = rep.N_pk; I[i] = rep.I_pk; Im[i] = rep.I_pmk; Sk[i] = rep.S_k;
    }
    if (!nonincreasing(N)) t.update(1.0, "N_pk vs epsilon");
    if (!nonincreasing(I)) t.update(1.0, "I_pk vs epsilon");
    if (!nondecreasing(Im)) t.update(1.0, "I_pmk vs epsilon");
    if (!nondecreasing(Sk)) t.update(1.0, "S_k vs epsilon");

    cosmo = CosmologyParams{};
    for (int i = 0; i < n; ++i) {
      kval[i] = std::exp(std::log(0.01) + i * (std::log(100.0) - std::log(0.01)) / (n - 1));
      mode.momentum = kval[i];
      const auto rep = measures::report(mode, cosmo, tol_series);
      N[i] = rep.N_pk; I[i] = rep.I_pk; Im[i] = rep.I_pmk; Sk[i] = rep.S_k;
    }
    if (!nondecreasing(N)) t.update(1.0, "N_pk vs momentum");
    if (!nondecreasing(I)) t.update(1.0, "I_pk vs momentum");
    if (!nonincreasing(Im)) t.update(1.0, "I_pmk vs momentum");
    if (!nonincreasing(Sk)) t.update(1.0, "S_k vs momentum");

    // mass sweep at the canonical family: interior extremum + flat endpoints
    mode = ModeParams{};
    const int nm = 41;
    std::vector<double> Nm(nm), Imm(nm), Ipk(nm);
    for (int i = 0; i < nm; ++i) {
      mode.mass = std::exp(std::log(0.01) + i * (std::log(100.0) - std::log(0.01)) / (nm - 1));
      const auto rep = measures::report(mode, cosmo, tol_series);
      Nm[i] = rep.N_pk; Imm[i] = rep.I_pmk; Ipk[i] = rep.I_pk;
    }
    const auto imin = std::min_element(Nm.begin(), Nm.end()) - Nm.begin();
    const auto imax = std::max_element(Imm.begin(), Imm.end()) - Imm.begin();
    if (imin == 0 || imin == nm - 1) t.update(1.0, "N_pk mass extremum");
    if (imax == 0 || imax == nm - 1) t.update(1.0, "I_pmk mass extremum");
    const double endpoint = std::max(std::abs(Nm.front() - 1.0),
                                     std::abs(Nm.back() - 1.0));
    if (endpoint > 1e-3) t.update(1.0, "mass endpoint recovery");
    // argmin I_pk coincides with argmax I_pmk on the shared grid
    const auto jmin = std::min_element(Ipk.begin(), Ipk.end()) - Ipk.begin();
    if (jmin != imax) t.update(1.0, "argmax coincidence");
    results.push_back(finish("figure-shapes", t, 0.0));
  }

  // --- trigger property ---
  {
    Tracker t;
    ModeParams mode;
    CosmologyParams cosmo;
    for (double chi : {0.0, 1.0}) {
      mode.chi = chi;
      const auto rep = measures::report(mode, cosmo, tol_series);
      t.update(std::abs(rep.I_pmk), "chi=" + std::to_string(chi));
      t.update(std::abs(rep.N_pk), "chi=" + std::to_string(chi));
    }
    mode.chi = kChiHalf;
    const auto rep = measures::report(mode, cosmo, tol_series);
    if (!(rep.I_pmk > 0.0)) t.update(1.0, "chi=1/sqrt2 generation");
    results.push_back(finish("trigger-property", t, 1e-12));
  }

  // --- estimation round trip ---
  {
    Tracker t;
    const std::vector<double> momenta = {0.2, 0.5, 1.0, 2.0, 5.0};
    const auto obs = estimate::synthesize(5.0, 8.0, 0.05, momenta,
                                          estimate::ObservableKind::GammaSq,
                                          kChiHalf, 0.0, 1);
    const auto fit = estimate::fit_parameters(obs, 1.0, 1.0);
    t.update(std::abs(fit.epsilon_hat / 5.0 - 1.0), "noiseless epsilon");
    t.update(std::abs(fit.rho_hat / 8.0 - 1.0), "noiseless rho");
    if (!fit.converged) t.update(1.0, "noiseless convergence flag");
    results.push_back(finish("estimation-roundtrip", t, 1e-6));

    Tracker tn;
    std::vector<double> errs;
    for (int s = 0; s < options.mc_seeds; ++s) {
      const auto noisy = estimate::synthesize(
          5.0, 8.0, 0.05, momenta, estimate::ObservableKind::GammaSq, kChiHalf,
          0.01, 1000 + s);
      const auto f = estimate::fit_parameters(noisy, 1.0, 1.0);
      errs.push_back(std::max(std::abs(f.epsilon_hat / 5.0 - 1.0),
                              std::abs(f.rho_hat / 8.0 - 1.0)));
    }
    std::sort(errs.begin(), errs.end());
    tn.update(errs[errs.size() / 2], "median over seeds");
    results.push_back(finish("estimation-noisy-median", tn, 0.05));
  }

  // --- truncation certification at the canonical point ---
  {
    Tracker t;
    ModeParams mode;
    CosmologyParams cosmo;
    const BogoliubovData bog = spectrum::bogoliubov(mode, cosmo);
    fock::TruncationPolicy policy;
    const int base = fock::choose_cutoff(bog.gamma_sq, policy);
    fock::TruncationPolicy doubled = policy;
    doubled.cutoff = 2 * base;
    doubled.hard_cap = std::max(doubled.hard_cap, 2 * base);
    const auto a = fock::oracle_report(mode.chi, bog, policy);
    const auto b = fock::oracle_report(mode.chi, bog, doubled);
    t.update(std::abs(a.N_pk - b.N_pk), "N_pk");
    t.update(std::abs(a.S_p - b.S_p), "S_p");
    t.update(std::abs(a.S_k - b.S_k), "S_k");
    t.update(std::abs(a.S_pk - b.S_pk), "S_pk");
    t.update(std::abs(a.S_pmk - b.S_pmk), "S_pmk");
    t.update(std::abs(a.I_pk - b.I_pk), "I_pk");
    t.update(std::abs(a.I_pmk - b.I_pmk), "I_pmk");
    t.update(std::abs(a.pmk_pt_trace_norm - b.pmk_pt_trace_norm), "pmk norm");
    results.push_back(finish("truncation-doubling", t, 1e-10));
  }

  return results;
}

std::string format_result(const CheckResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "[%s] %-32s worst %.3e (tol %.3e)%s%s",
                r.passed ? "PASS" : "FAIL", r.name.c_str(), r.worst,
                r.threshold, r.detail.empty() ? "" : "  ",
                r.detail.c_str());
  return buf;
}

}  // namespace rwqc::selftest

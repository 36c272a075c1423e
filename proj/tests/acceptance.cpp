// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Writes figure data to the directory given as argv[1] (default
// ./acceptance_out) and asserts the shape criteria on the emitted files.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rwqc/estimate.hpp"
#include "rwqc/fock.hpp"
#include "rwqc/io.hpp"
#include "rwqc/measures.hpp"
#include "rwqc/selftest.hpp"
#include "rwqc/spectrum.hpp"
#include "rwqc/sweep.hpp"

namespace {

namespace fs = std::filesystem;
using rwqc::spectrum::BogoliubovData;
using rwqc::spectrum::CosmologyParams;
using rwqc::spectrum::ModeParams;

constexpr double kChiHalf = 0.70710678118654752440;
constexpr std::uint64_t kSeed = 20260810;

int g_failures = 0;

void emit(int id, const std::string& name, bool pass,
          const std::string& detail) {
  std::printf("criterion-%02d %-4s %-28s %s\n", id, pass ? "PASS" : "FAIL",
              name.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

struct GridPoint {
  CosmologyParams cosmo;
  ModeParams mode;
};

GridPoint sample(std::mt19937_64& rng) {
  GridPoint p;
  p.cosmo.epsilon = rwqc::selftest::log_uniform(rng, 1e-2, 1e2);
  p.cosmo.rho = rwqc::selftest::log_uniform(rng, 1e-2, 1e2);
  p.mode.mass = rwqc::selftest::log_uniform(rng, 1e-2, 1e2);
  p.mode.momentum = rwqc::selftest::log_uniform(rng, 1e-2, 1e2);
  p.mode.chi = kChiHalf;
  return p;
}

// ---- criteria 1, 2, 4 (closed-form part) over the shared 500-point grid ----
void criteria_grid() {
  std::mt19937_64 rng(kSeed);
  double worst_norm = 0.0, worst_route = 0.0;
  bool sum_ok = true;
  for (int i = 0; i < 500; ++i) {
    const GridPoint p = sample(rng);
    const BogoliubovData bog = rwqc::spectrum::bogoliubov(p.mode, p.cosmo);
    worst_norm = std::max(worst_norm, std::abs(bog.normalization_residual()));
    worst_route = std::max(
        worst_route, std::abs(bog.gamma_sq_gamma_route() - bog.gamma_sq));
    try {
      // the closed-form trace-norm sum is checked against 1 inside
      (void)rwqc::measures::negativity_pmk(kChiHalf, bog, 1e-10);
    } catch (const std::exception&) {
      sum_ok = false;
    }
  }
  emit(1, "bogoliubov-normalization", worst_norm <= 1e-10,
       "max ||alpha|^2-|beta|^2-1| = " + fmt(worst_norm) + " (tol 1e-10)");
  emit(2, "route-equivalence", worst_route <= 1e-10,
       "max |gamma^2(Gamma) - gamma^2(sinh)| = " + fmt(worst_route) +
           " (tol 1e-10)");
  if (!sum_ok) {
    emit(4, "zero-antiboson-negativity", false,
         "closed-form trace-norm sum deviated from 1 beyond 1e-10");
  }
  // the oracle half of criterion 4 is reported from criteria_oracle()
}

// ---- criteria 3 and 4 (oracle part) ----
void criteria_oracle() {
  std::mt19937_64 rng(kSeed + 1);
  rwqc::fock::TruncationPolicy policy;
  double worst = 0.0, worst_norm = 0.0;
  std::string worst_what = "-";
  int accepted = 0;
  const auto t0 = std::chrono::steady_clock::now();
  while (accepted < 20) {
    const GridPoint p = sample(rng);
    const BogoliubovData bog = rwqc::spectrum::bogoliubov(p.mode, p.cosmo);
    if (bog.gamma_sq > 0.9) continue;
    ++accepted;
    const auto rep =
        rwqc::measures::report_from_bogoliubov(p.mode.chi, bog, 1e-10);
    const auto orc = rwqc::fock::oracle_report(p.mode.chi, bog, policy);
    const std::pair<const char*, double> diffs[] = {
        {"N_pk", std::abs(rep.N_pk - orc.N_pk)},
        {"S_p", std::abs(rep.S_p - orc.S_p)},
        {"S_k", std::abs(rep.S_k - orc.S_k)},
        {"S_mk", std::abs(rep.S_mk - orc.S_mk)},
        {"S_pk", std::abs(rep.S_pk - orc.S_pk)},
        {"S_pmk", std::abs(rep.S_pmk - orc.S_pmk)},
        {"I_pk", std::abs(rep.I_pk - orc.I_pk)},
        {"I_pmk", std::abs(rep.I_pmk - orc.I_pmk)},
    };
    for (const auto& [what, diff] : diffs) {
      if (diff > worst) {
        worst = diff;
        worst_what = what;
      }
    }
    worst_norm = std::max(worst_norm, std::abs(orc.pmk_pt_trace_norm - 1.0));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  emit(3, "oracle-equivalence", worst <= 1e-8 && secs < 30.0,
       "max |closed - oracle| = " + fmt(worst) + " [" + worst_what + "], " +
           fmt(secs) + " s (tol 1e-8, 30 s)");
  emit(4, "zero-antiboson-negativity", worst_norm <= 1e-8,
       "closed sum = 1 within 1e-10 everywhere; max oracle |trace norm - 1| "
       "= " + fmt(worst_norm) + " (tol 1e-8)");
}

// ---- criterion 5 ----
void criterion_monogamy() {
  std::mt19937_64 rng(kSeed + 2);
  double worst = 0.0;
  int accepted = 0;
  while (accepted < 100) {
    GridPoint p = sample(rng);
    p.mode.chi = 0.05 + 0.9 * rwqc::selftest::uniform01(rng);
    const BogoliubovData bog = rwqc::spectrum::bogoliubov(p.mode, p.cosmo);
    if (bog.gamma_sq > 0.9) continue;
    ++accepted;
    const auto rep =
        rwqc::measures::report_from_bogoliubov(p.mode.chi, bog, 1e-10);
    worst = std::max(worst, std::abs(rep.monogamy_residual));
  }
  const auto canon =
      rwqc::measures::report(ModeParams{}, CosmologyParams{}, 1e-10);
  const double canon_dev = std::abs(canon.I_pk + canon.I_pmk - 2.0);
  emit(5, "monogamy", worst <= 1e-8 && canon_dev <= 1e-8,
       "max residual = " + fmt(worst) + ", |I_pk+I_pmk-2| = " +
           fmt(canon_dev) + " at chi=1/sqrt2 (tol 1e-8)");
}

// ---- criterion 6 ----
void criterion_limits() {
  ModeParams mode;
  CosmologyParams cosmo;
  mode.momentum = 1e3;
  const auto rep = rwqc::measures::report(mode, cosmo, 1e-10);
  // S(rho_k) approaches its flat baseline S(rho_p); the expansion-generated
  // part S_k - S_p is what the stated limit sends to zero.
  const double dev_k =
      std::max({std::abs(rep.N_pk - 1.0), std::abs(rep.I_pk - 2.0),
                std::abs(rep.I_pmk), std::abs(rep.S_k - rep.S_p)});
  double dev_m = 0.0;
  for (double m : {1e-3, 1e3}) {
    ModeParams mm;
    mm.mass = m;
    const auto r = rwqc::measures::report(mm, cosmo, 1e-10);
    dev_m = std::max(dev_m, std::abs(r.N_pk - 1.0));
  }
  emit(6, "stated-limits", dev_k <= 1e-4 && dev_m <= 1e-3,
       "k=1e3 worst dev = " + fmt(dev_k) + " (tol 1e-4; S_k as excess over "
       "S_p), mass limits dev = " + fmt(dev_m) + " (tol 1e-3)");
}

// ---- criteria 7 and 8 on the emitted figure files ----
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  double at(std::size_t row, const std::string& col) const {
    const auto it = std::find(columns.begin(), columns.end(), col);
    if (it == columns.end()) throw std::runtime_error("missing column " + col);
    return rows[row][static_cast<std::size_t>(it - columns.begin())];
  }
};

// std::stod rejects subnormal values (ERANGE); the tail columns reach them.
double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    throw std::runtime_error("bad numeric field '" + s + "'");
  }
  return v;
}

CsvTable parse_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    fields.push_back(cur);
    if (t.columns.empty()) {
      t.columns = fields;
      continue;
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f));
    t.rows.push_back(std::move(row));
  }
  return t;
}

bool monotone(const std::vector<double>& v, bool increasing,
              double slack = 1e-12) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (increasing && v[i] < v[i - 1] - slack) return false;
    if (!increasing && v[i] > v[i - 1] + slack) return false;
  }
  return true;
}

void write_figure(const fs::path& dir, int id) {
  const auto rows = rwqc::sweep::figure_rows(id, 1e-10, 0);
  std::ofstream out(dir / ("figure" + std::to_string(id) + ".csv"));
  rwqc::sweep::write_csv(out, rwqc::sweep::figure_comment(id, 1e-10), rows);
}

void criteria_figures(const fs::path& dir) {
  fs::create_directories(dir);
  for (int id : {1, 3, 4, 5, 7, 8}) write_figure(dir, id);

  bool pass7 = true;
  std::string why;

  // surfaces: 60x60 grids, epsilon-major ordering
  const CsvTable f1 = parse_csv(dir / "figure1.csv");
  const CsvTable f4 = parse_csv(dir / "figure4.csv");
  const CsvTable f7 = parse_csv(dir / "figure7.csv");
  const int n = 60;
  auto surface_check = [&](const CsvTable& t, const std::string& col,
                           bool increasing, const std::string& label) {
    for (int i = 0; i < n && pass7; ++i) {
      std::vector<double> along_rho(n), along_eps(n);
      for (int j = 0; j < n; ++j) {
        along_rho[j] = t.at(i * n + j, col);
        along_eps[j] = t.at(j * n + i, col);
      }
      if (!monotone(along_rho, increasing) || !monotone(along_eps, increasing)) {
        pass7 = false;
        why = label + " not monotone";
      }
    }
  };
  surface_check(f1, "N_pk", false, "figure1 N_pk");
  surface_check(f1, "I_pk", false, "figure1 I_pk");
  surface_check(f4, "I_pmk", true, "figure4 I_pmk");
  surface_check(f7, "S_k", true, "figure7 S_k");

  const CsvTable f3 = parse_csv(dir / "figure3.csv");
  const CsvTable f5 = parse_csv(dir / "figure5.csv");
  const CsvTable f8 = parse_csv(dir / "figure8.csv");

  // interior-extremum checks with a resolvability guard: sub-ulp families
  // (deviation below 1e-12) are numerically flat and only the endpoint
  // recovery can be asserted for them.  The canonical family must resolve.
  bool canonical_seen = false;
  auto extremum_check = [&](const CsvTable& t, const std::string& col,
                            bool maximum, const std::string& label,
                            double flat_value_chi_half) {
    std::map<std::pair<double, double>, std::vector<std::size_t>> fams;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      // mass-sweep rows: the swept mass differs from the pinned value 1.0
      // except at the crossing point, so key on (epsilon, rho) and keep row
      // order; momentum stays at its pinned 1.0 for these rows.
      if (t.at(r, "momentum") != 1.0) continue;
      fams[{t.at(r, "epsilon"), t.at(r, "rho")}].push_back(r);
    }
    for (const auto& [key, idx] : fams) {
      if (idx.size() < 10) continue;  // not a mass family (surface figures)
      std::vector<double> v(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) v[i] = t.at(idx[i], col);
      const double lo = *std::min_element(v.begin(), v.end());
      const double hi = *std::max_element(v.begin(), v.end());
      const double endpoint_dev =
          std::max(std::abs(v.front() - flat_value_chi_half),
                   std::abs(v.back() - flat_value_chi_half));
      if (endpoint_dev > 1e-3) {
        pass7 = false;
        why = label + " endpoint recovery failed";
        return;
      }
      if (hi - lo <= 1e-12) continue;  // flat at double precision
      const auto it = maximum ? std::max_element(v.begin(), v.end())
                              : std::min_element(v.begin(), v.end());
      const auto pos = it - v.begin();
      if (pos == 0 || pos == static_cast<std::ptrdiff_t>(v.size()) - 1) {
        pass7 = false;
        why = label + " extremum sits at the boundary";
        return;
      }
      if (key.first == 10.0 && key.second == 10.0) canonical_seen = true;
    }
  };
  extremum_check(f3, "N_pk", false, "figure3 N_pk", 1.0);
  extremum_check(f3, "I_pk", false, "figure3 I_pk", 2.0);
  extremum_check(f5, "I_pmk", true, "figure5 I_pmk", 0.0);
  extremum_check(f8, "S_k", true, "figure8 S_k", 1.0);
  if (!canonical_seen && pass7) {
    pass7 = false;
    why = "canonical family unresolved";
  }
  emit(7, "figure-shapes", pass7, pass7 ? "surfaces monotone; interior mass "
                                          "extrema with endpoint recovery"
                                        : why);

  // criterion 8: argmin I_pk == argmax I_pmk family by family on figure 3
  bool pass8 = true;
  std::string why8;
  {
    std::map<std::pair<double, double>, std::vector<std::size_t>> fams;
    for (std::size_t r = 0; r < f3.rows.size(); ++r) {
      fams[{f3.at(r, "epsilon"), f3.at(r, "rho")}].push_back(r);
    }
    for (const auto& [key, idx] : fams) {
      std::vector<double> ipk(idx.size()), ipmk(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) {
        ipk[i] = f3.at(idx[i], "I_pk");
        ipmk[i] = f3.at(idx[i], "I_pmk");
      }
      const auto imin = std::min_element(ipk.begin(), ipk.end()) - ipk.begin();
      const auto imax =
          std::max_element(ipmk.begin(), ipmk.end()) - ipmk.begin();
      if (imin != imax) {
        pass8 = false;
        std::ostringstream os;
        os << "family (eps=" << key.first << ", rho=" << key.second
           << "): argmin I_pk = " << imin << " but argmax I_pmk = " << imax;
        why8 = os.str();
      }
    }
  }
  emit(8, "argmax-coincidence", pass8,
       pass8 ? "argmin I_pk = argmax I_pmk in every mass family" : why8);
}

// ---- criterion 9 ----
void criterion_trigger() {
  CosmologyParams cosmo;
  bool pass = true;
  std::string why = "I_pmk = 0 at chi in {0,1}; I_pmk > 0 at chi=1/sqrt2";
  for (double chi : {0.0, 1.0}) {
    ModeParams mode;
    mode.chi = chi;
    const auto rep = rwqc::measures::report(mode, cosmo, 1e-10);
    if (rep.I_pmk != 0.0) {
      pass = false;
      why = "I_pmk nonzero at chi=" + std::to_string(chi);
    }
  }
  std::mt19937_64 rng(kSeed + 3);
  int tested = 0;
  while (tested < 10) {
    GridPoint p = sample(rng);
    const BogoliubovData bog = rwqc::spectrum::bogoliubov(p.mode, p.cosmo);
    if (bog.gamma_sq <= 1e-8 || bog.gamma_sq > 0.9) continue;
    ++tested;
    const auto rep = rwqc::measures::report_from_bogoliubov(kChiHalf, bog, 1e-10);
    if (!(rep.I_pmk > 0.0)) {
      pass = false;
      why = "no generation at gamma_sq=" + fmt(bog.gamma_sq);
    }
  }
  emit(9, "trigger-property", pass, why);
}

// ---- criterion 10 ----
void criterion_estimation() {
  const std::vector<double> momenta = {0.2, 0.5, 1.0, 2.0, 5.0};
  const auto obs = rwqc::estimate::synthesize(
      5.0, 8.0, 0.05, momenta, rwqc::estimate::ObservableKind::GammaSq,
      kChiHalf, 0.0, kSeed);
  const auto fit = rwqc::estimate::fit_parameters(obs, 1.0, 1.0);
  const double noiseless = std::max(std::abs(fit.epsilon_hat / 5.0 - 1.0),
                                    std::abs(fit.rho_hat / 8.0 - 1.0));

  std::vector<double> errs;
  for (int s = 0; s < 50; ++s) {
    const auto noisy = rwqc::estimate::synthesize(
        5.0, 8.0, 0.05, momenta, rwqc::estimate::ObservableKind::GammaSq,
        kChiHalf, 0.01, kSeed + 100 + s);
    const auto f = rwqc::estimate::fit_parameters(noisy, 1.0, 1.0);
    errs.push_back(std::max(std::abs(f.epsilon_hat / 5.0 - 1.0),
                            std::abs(f.rho_hat / 8.0 - 1.0)));
  }
  std::sort(errs.begin(), errs.end());
  const double median = errs[errs.size() / 2];
  emit(10, "estimation-roundtrip",
       noiseless <= 1e-6 && fit.converged && median <= 0.05,
       "noiseless rel err = " + fmt(noiseless) + " (tol 1e-6), noisy median "
       "= " + fmt(median) + " over 50 seeds (tol 5e-2)");
}

// ---- criterion 11 ----
void criterion_truncation() {
  ModeParams mode;
  CosmologyParams cosmo;
  const BogoliubovData bog = rwqc::spectrum::bogoliubov(mode, cosmo);
  const double g2_dev = std::abs(bog.gamma_sq - 0.23343878689342494);

  rwqc::fock::TruncationPolicy policy;
  const int base = rwqc::fock::choose_cutoff(bog.gamma_sq, policy);
  rwqc::fock::TruncationPolicy doubled = policy;
  doubled.cutoff = 2 * base;
  doubled.hard_cap = std::max(doubled.hard_cap, 2 * base);
  const auto a = rwqc::fock::oracle_report(kChiHalf, bog, policy);
  const auto b = rwqc::fock::oracle_report(kChiHalf, bog, doubled);
  const double worst = std::max(
      {std::abs(a.N_pk - b.N_pk), std::abs(a.S_p - b.S_p),
       std::abs(a.S_k - b.S_k), std::abs(a.S_mk - b.S_mk),
       std::abs(a.S_pk - b.S_pk), std::abs(a.S_pmk - b.S_pmk),
       std::abs(a.I_pk - b.I_pk), std::abs(a.I_pmk - b.I_pmk),
       std::abs(a.pmk_pt_trace_norm - b.pmk_pt_trace_norm)});
  emit(11, "truncation-certification",
       worst < 1e-10 && g2_dev < 1e-12,
       "cutoff " + std::to_string(base) + " -> " + std::to_string(2 * base) +
           ": max observable change = " + fmt(worst) +
           " (tol 1e-10); gamma_sq dev = " + fmt(g2_dev));
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path out_dir = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_out");
  try {
    criteria_grid();
    criteria_oracle();
    criterion_monogamy();
    criterion_limits();
    criteria_figures(out_dir);
    criterion_trigger();
    criterion_estimation();
    criterion_truncation();
  } catch (const std::exception& e) {
    std::printf("acceptance suite aborted: %s\n", e.what());
    return 99;
  }
  std::printf("%s\n", g_failures == 0 ? "ACCEPTANCE: all criteria passed"
                                      : "ACCEPTANCE: FAILURES PRESENT");
  return g_failures;
}

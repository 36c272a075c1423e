// Command-line surface: single-point reports, figure and sweep data files,
// parameter estimation and the randomized self-test suite.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rwqc/errors.hpp"
#include "rwqc/estimate.hpp"
#include "rwqc/fock.hpp"
#include "rwqc/io.hpp"
#include "rwqc/measures.hpp"
#include "rwqc/selftest.hpp"
#include "rwqc/spectrum.hpp"
#include "rwqc/sweep.hpp"

namespace {

namespace fs = std::filesystem;
using rwqc::spectrum::CosmologyParams;
using rwqc::spectrum::ModeParams;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumericalFault = 2;
constexpr int kExitNonConvergence = 3;

struct GlobalOpts {
  double tol = 1e-10;
  int cutoff_cap = 512;
  std::uint64_t seed = 20260810;
  std::string output;
  std::string format = "csv";
  bool pretty = false;
  int threads = 0;
};

void check_run_config(const GlobalOpts& g) {
  if (!(g.tol > 0.0 && g.tol <= 1e-2)) {
    throw rwqc::validation_error("--tol must lie in (0, 1e-2]");
  }
  if (g.cutoff_cap < 8 || g.cutoff_cap > 4096) {
    throw rwqc::validation_error("--cutoff-cap must lie in [8, 4096]");
  }
  if (g.format != "csv" && g.format != "json") {
    throw rwqc::validation_error("--format must be csv or json");
  }
}

void print_report_pretty(const rwqc::io::ReportRow& row) {
  const auto& r = row.rep;
  std::ostringstream os;
  os << "parameters: epsilon=" << row.epsilon << " rho=" << row.rho
     << " mass=" << row.mass << " momentum=" << row.momentum
     << " chi=" << row.chi << "\n"
     << "  gamma_sq           " << rwqc::io::format_double(r.gamma_sq) << "\n"
     << "  N(qubit,boson)     " << rwqc::io::format_double(r.N_pk) << "\n"
     << "  N(qubit,antiboson) " << rwqc::io::format_double(r.N_pmk) << "\n"
     << "  I(qubit,boson)     " << rwqc::io::format_double(r.I_pk) << "\n"
     << "  I(qubit,antiboson) " << rwqc::io::format_double(r.I_pmk) << "\n"
     << "  S(qubit)           " << rwqc::io::format_double(r.S_p) << "\n"
     << "  S(boson)           " << rwqc::io::format_double(r.S_k) << "\n"
     << "  S(antiboson)       " << rwqc::io::format_double(r.S_mk) << "\n"
     << "  S(qubit,boson)     " << rwqc::io::format_double(r.S_pk) << "\n"
     << "  S(qubit,antiboson) " << rwqc::io::format_double(r.S_pmk) << "\n"
     << "  monogamy residual  " << rwqc::io::format_double(r.monogamy_residual)
     << "\n"
     << "  terms used         " << r.terms_used << "\n"
     << "  tail bound         " << rwqc::io::format_double(r.tail_bound)
     << "\n";
  std::cout << os.str();
}

int cmd_report(const GlobalOpts& g, const ModeParams& mode,
               const CosmologyParams& cosmo) {
  check_run_config(g);
  rwqc::io::ReportRow row;
  row.epsilon = cosmo.epsilon;
  row.rho = cosmo.rho;
  row.mass = mode.mass;
  row.momentum = mode.momentum;
  row.chi = mode.chi;
  row.rep = rwqc::measures::report(mode, cosmo, g.tol);
  if (g.pretty) {
    print_report_pretty(row);
  } else {
    std::cout << rwqc::io::report_row_json(row).dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_figures(const GlobalOpts& g, int figure_id, bool svg) {
  check_run_config(g);
  const fs::path dir = g.output.empty() ? fs::path(".") : fs::path(g.output);
  fs::create_directories(dir);
  const int threads = rwqc::sweep::thread_count(g.threads);
  const auto rows = rwqc::sweep::figure_rows(figure_id, g.tol, threads);
  const std::string comment = rwqc::sweep::figure_comment(figure_id, g.tol);

  const fs::path csv = dir / ("figure" + std::to_string(figure_id) + ".csv");
  {
    std::ofstream out(csv);
    rwqc::sweep::write_csv(out, comment, rows);
  }
  std::cout << csv.string() << "\n";
  if (g.format == "json") {
    const fs::path jp = dir / ("figure" + std::to_string(figure_id) + ".json");
    std::ofstream out(jp);
    rwqc::sweep::write_json(out, comment, rows);
    std::cout << jp.string() << "\n";
  }
  if (svg) {
    const fs::path sp = dir / ("figure" + std::to_string(figure_id) + ".svg");
    std::ofstream out(sp);
    out << rwqc::sweep::figure_svg(figure_id, rows);
    std::cout << sp.string() << "\n";
  }
  return kExitOk;
}

rwqc::sweep::Axis parse_axis(const std::string& text) {
  // name:min:max:count:lin|log
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 5) {
    throw rwqc::validation_error("--axis expects name:min:max:count:lin|log");
  }
  rwqc::sweep::Axis ax;
  ax.name = parts[0];
  try {
    ax.min = std::stod(parts[1]);
    ax.max = std::stod(parts[2]);
    ax.count = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw rwqc::validation_error("--axis has a malformed number in '" + text +
                                 "'");
  }
  if (parts[4] == "log") {
    ax.log_spacing = true;
  } else if (parts[4] == "lin") {
    ax.log_spacing = false;
  } else {
    throw rwqc::validation_error("--axis spacing must be lin or log");
  }
  return ax;
}

int cmd_sweep(const GlobalOpts& g, const std::vector<std::string>& axis_args,
              const std::vector<std::string>& fix_args) {
  check_run_config(g);
  rwqc::sweep::SweepSpec spec;
  spec.tol = g.tol;
  for (const std::string& a : axis_args) spec.axes.push_back(parse_axis(a));
  for (const std::string& f : fix_args) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) {
      throw rwqc::validation_error("--fix expects name=value, got '" + f + "'");
    }
    try {
      spec.fixed[f.substr(0, eq)] = std::stod(f.substr(eq + 1));
    } catch (const std::exception&) {
      throw rwqc::validation_error("--fix has a malformed value in '" + f + "'");
    }
  }
  spec.validate();
  const int threads = rwqc::sweep::thread_count(g.threads);
  const auto rows = rwqc::sweep::run(spec, threads);

  std::ostringstream comment;
  comment << "# sweep; tol=" << rwqc::io::format_double(g.tol) << "; fixed:";
  for (const auto& [name, value] : spec.fixed) {
    comment << ' ' << name << '=' << rwqc::io::format_double(value);
  }
  comment << "; axes:";
  for (const auto& ax : spec.axes) {
    comment << ' ' << ax.name << (ax.log_spacing ? " log [" : " lin [")
            << rwqc::io::format_double(ax.min) << ','
            << rwqc::io::format_double(ax.max) << "] n=" << ax.count;
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!g.output.empty()) {
    file.open(g.output);
    if (!file) {
      throw rwqc::validation_error("cannot open output file " + g.output);
    }
    out = &file;
  }
  if (g.format == "json") {
    rwqc::sweep::write_json(*out, comment.str(), rows);
  } else {
    rwqc::sweep::write_csv(*out, comment.str(), rows);
  }
  return kExitOk;
}

int cmd_estimate(const GlobalOpts& g, const std::string& obs_path,
                 double mass, double chi, double init_eps, double init_rho,
                 bool synthesize, double truth_eps, double truth_rho,
                 const std::string& momenta_csv, const std::string& kind_name,
                 double noise) {
  check_run_config(g);
  if (synthesize) {
    std::vector<double> momenta;
    std::stringstream ss(momenta_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        momenta.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw rwqc::validation_error("--momenta has a malformed value '" +
                                     item + "'");
      }
    }
    const auto kind = rwqc::io::parse_observable_kind(kind_name);
    const auto obs = rwqc::estimate::synthesize(truth_eps, truth_rho, mass,
                                                momenta, kind, chi, noise,
                                                g.seed);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!g.output.empty()) {
      file.open(g.output);
      if (!file) {
        throw rwqc::validation_error("cannot open output file " + g.output);
      }
      out = &file;
    }
    rwqc::io::write_observations_csv(*out, obs);
    return kExitOk;
  }

  if (obs_path.empty()) {
    throw rwqc::validation_error("estimate needs --observations FILE");
  }
  std::ifstream in(obs_path);
  if (!in) {
    throw rwqc::validation_error("cannot open observation file " + obs_path);
  }
  const auto obs = rwqc::io::read_observations_csv(in, mass, chi);
  rwqc::estimate::FitOptions opts;
  opts.series_tol = g.tol;
  const auto res = rwqc::estimate::fit_parameters(obs, init_eps, init_rho, opts);
  const nlohmann::json j = rwqc::io::estimation_json(res);
  if (!g.output.empty()) {
    std::ofstream file(g.output);
    if (!file) {
      throw rwqc::validation_error("cannot open output file " + g.output);
    }
    file << j.dump(2) << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return res.converged ? kExitOk : kExitNonConvergence;
}

int cmd_selftest(const GlobalOpts& g, int points, int mc_seeds) {
  check_run_config(g);
  rwqc::selftest::Options opts;
  opts.points = points;
  opts.seed = g.seed;
  opts.mc_seeds = mc_seeds;
  opts.cutoff_cap = g.cutoff_cap;
  const auto results = rwqc::selftest::run(opts);
  bool all_ok = true;
  for (const auto& r : results) {
    std::cout << rwqc::selftest::format_result(r) << "\n";
    all_ok = all_ok && r.passed;
  }
  std::cout << (all_ok ? "all checks passed" : "CHECK FAILURES PRESENT")
            << "\n";
  return all_ok ? kExitOk : kExitNumericalFault;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit-boson correlations across a smooth spacetime expansion"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--tol", g.tol, "series tolerance, in (0, 1e-2]");
  app.add_option("--cutoff-cap", g.cutoff_cap, "Fock cutoff cap, in [8, 4096]");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--output", g.output, "output file or directory");
  app.add_option("--format", g.format, "csv or json");
  app.add_flag("--pretty", g.pretty, "human-readable output");
  app.add_option("--threads", g.threads,
                 "worker pool size (0 = hardware, capped by RWQC_THREADS)");

  ModeParams mode;
  CosmologyParams cosmo;
  auto* rep = app.add_subcommand("report", "correlation report at one point");
  rep->add_option("--epsilon", cosmo.epsilon, "expansion volume");
  rep->add_option("--rho", cosmo.rho, "expansion rate");
  rep->add_option("--mass", mode.mass, "mode mass");
  rep->add_option("--momentum", mode.momentum, "mode momentum");
  rep->add_option("--chi", mode.chi, "initial-state weight in [0,1]");

  int figure_id = 1;
  bool svg = false;
  auto* fig = app.add_subcommand("figures", "emit figure data files");
  fig->add_option("--id", figure_id, "figure id in 1..8")->required();
  fig->add_flag("--svg", svg, "also render a minimal SVG");

  std::vector<std::string> axis_args, fix_args;
  auto* sw = app.add_subcommand("sweep", "evaluate a parameter grid");
  sw->add_option("--axis", axis_args, "axis as name:min:max:count:lin|log");
  sw->add_option("--fix", fix_args, "fixed parameter as name=value");

  std::string obs_path, momenta_csv = "0.2,0.5,1,2,5", kind_name = "gamma_sq";
  double mass = 0.05, chi = 0.70710678118654752440;
  double init_eps = 1.0, init_rho = 1.0;
  double truth_eps = 5.0, truth_rho = 8.0, noise = 0.0;
  bool synthesize = false;
  auto* est = app.add_subcommand("estimate",
                                 "invert observations for (epsilon, rho)");
  est->add_option("--observations", obs_path, "observation CSV (k,value,kind)");
  est->add_option("--mass", mass, "known mode mass");
  est->add_option("--chi", chi, "initial-state weight");
  est->add_option("--init-epsilon", init_eps, "initial epsilon");
  est->add_option("--init-rho", init_rho, "initial rho");
  est->add_flag("--synthesize", synthesize,
                "generate observations from a known truth instead of fitting");
  est->add_option("--epsilon", truth_eps, "truth epsilon for --synthesize");
  est->add_option("--rho", truth_rho, "truth rho for --synthesize");
  est->add_option("--momenta", momenta_csv, "comma-separated momenta");
  est->add_option("--kind", kind_name, "observable kind: gamma_sq, I_pmk, S_k");
  est->add_option("--noise", noise, "multiplicative noise scale");

  int points = 100, mc_seeds = 10;
  auto* st = app.add_subcommand("selftest", "randomized consistency suite");
  st->add_option("--points", points, "randomized grid size");
  st->add_option("--mc-seeds", mc_seeds, "noisy-estimation repetitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message or help text
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (rep->parsed()) return cmd_report(g, mode, cosmo);
    if (fig->parsed()) return cmd_figures(g, figure_id, svg);
    if (sw->parsed()) return cmd_sweep(g, axis_args, fix_args);
    if (est->parsed()) {
      return cmd_estimate(g, obs_path, mass, chi, init_eps, init_rho,
                          synthesize, truth_eps, truth_rho, momenta_csv,
                          kind_name, noise);
    }
    if (st->parsed()) return cmd_selftest(g, points, mc_seeds);
  } catch (const rwqc::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const rwqc::numerical_error& e) {
    std::cerr << "numerical fault: " << e.what() << "\n";
    return kExitNumericalFault;
  } catch (const rwqc::out_of_regime_error& e) {
    std::cerr << "out of regime: " << e.what() << "\n";
    return kExitNumericalFault;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalFault;
  }
  return kExitValidation;
}

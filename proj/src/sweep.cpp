#include "rwqc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "rwqc/errors.hpp"
#include "rwqc/measures.hpp"

namespace rwqc::sweep {

namespace {

const std::set<std::string> kParamNames = {"epsilon", "rho", "mass",
                                           "momentum", "chi"};

struct Point {
  double epsilon = 10.0;
  double rho = 10.0;
  double mass = 1.0;
  double momentum = 1.0;
  double chi = 0.70710678118654752440;

  void set(const std::string& name, double v) {
    if (name == "epsilon") epsilon = v;
    else if (name == "rho") rho = v;
    else if (name == "mass") mass = v;
    else if (name == "momentum") momentum = v;
    else if (name == "chi") chi = v;
    else throw validation_error("unknown parameter '" + name + "'");
  }
};

io::ReportRow evaluate(const Point& p, double tol) {
  spectrum::ModeParams mode;
  mode.mass = p.mass;
  mode.momentum = p.momentum;
  mode.chi = p.chi;
  spectrum::CosmologyParams cosmo;
  cosmo.epsilon = p.epsilon;
  cosmo.rho = p.rho;
  io::ReportRow row;
  row.epsilon = p.epsilon;
  row.rho = p.rho;
  row.mass = p.mass;
  row.momentum = p.momentum;
  row.chi = p.chi;
  row.rep = measures::report(mode, cosmo, tol);
  return row;
}

std::vector<io::ReportRow> run_points(const std::vector<Point>& pts,
                                      double tol, int threads) {
  std::vector<io::ReportRow> rows(pts.size());
  threads = std::min<int>(std::max(threads, 1),
                          static_cast<int>(pts.size()) + 1);
  if (threads <= 1) {
    for (std::size_t i = 0; i < pts.size(); ++i) rows[i] = evaluate(pts[i], tol);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1);
        if (i >= pts.size()) break;
        try {
          rows[i] = evaluate(pts[i], tol);
        } catch (...) {
          failed.store(true);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failed.load()) {
    throw numerical_error("a sweep grid point failed to evaluate");
  }
  return rows;
}

std::vector<Point> grid_points(const SweepSpec& spec) {
  Point base;
  for (const auto& [name, value] : spec.fixed) base.set(name, value);

  std::vector<std::vector<double>> values;
  for (const Axis& ax : spec.axes) values.push_back(axis_values(ax));

  std::vector<Point> pts;
  if (spec.axes.empty()) {
    pts.push_back(base);
  } else if (spec.axes.size() == 1) {
    for (double v : values[0]) {
      Point p = base;
      p.set(spec.axes[0].name, v);
      pts.push_back(p);
    }
  } else {
    for (double v0 : values[0]) {
      for (double v1 : values[1]) {
        Point p = base;
        p.set(spec.axes[0].name, v0);
        p.set(spec.axes[1].name, v1);
        pts.push_back(p);
      }
    }
  }
  return pts;
}

}  // namespace

void SweepSpec::validate() const {
  if (axes.size() > 2) {
    throw validation_error("at most two sweep axes are supported");
  }
  std::set<std::string> swept;
  for (const Axis& ax : axes) {
    if (!kParamNames.count(ax.name)) {
      throw validation_error("unknown sweep parameter '" + ax.name + "'");
    }
    if (!swept.insert(ax.name).second) {
      throw validation_error("parameter '" + ax.name + "' swept twice");
    }
    if (ax.count < 2) {
      throw validation_error("axis '" + ax.name + "' needs count >= 2");
    }
    if (!(ax.min < ax.max)) {
      throw validation_error("axis '" + ax.name + "' needs min < max");
    }
    if (ax.log_spacing && !(ax.min > 0.0)) {
      throw validation_error("log axis '" + ax.name + "' needs min > 0");
    }
  }
  for (const auto& [name, value] : fixed) {
    (void)value;
    if (!kParamNames.count(name)) {
      throw validation_error("unknown fixed parameter '" + name + "'");
    }
    if (swept.count(name)) {
      throw validation_error("parameter '" + name +
                             "' is both swept and fixed");
    }
  }
  if (!(tol > 0.0 && tol <= 1e-2)) {
    throw validation_error("tol must lie in (0, 1e-2]");
  }
}

std::vector<double> axis_values(const Axis& axis) {
  std::vector<double> v(axis.count);
  for (int i = 0; i < axis.count; ++i) {
    const double t = static_cast<double>(i) / (axis.count - 1);
    v[i] = axis.log_spacing
               ? std::exp(std::log(axis.min) +
                          t * (std::log(axis.max) - std::log(axis.min)))
               : axis.min + t * (axis.max - axis.min);
  }
  v.front() = axis.min;
  v.back() = axis.max;
  return v;
}

int thread_count(int requested) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("RWQC_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

std::vector<io::ReportRow> run(const SweepSpec& spec, int threads) {
  spec.validate();
  return run_points(grid_points(spec), spec.tol, threads);
}

namespace {

SweepSpec surface_spec(double tol) {
  SweepSpec s;
  s.axes = {{"epsilon", 0.1, 100.0, 60, true}, {"rho", 0.1, 100.0, 60, true}};
  s.fixed = {{"mass", 1.0}, {"momentum", 1.0}};
  s.tol = tol;
  return s;
}

// Six one-parameter families: epsilon in {0.1, 1, 10} at rho = 10, then
// rho in {0.1, 1, 10} at epsilon = 10.
std::vector<io::ReportRow> family_sweeps(const std::string& axis_name,
                                         double fixed_mass,
                                         double fixed_momentum, double tol,
                                         int threads) {
  std::vector<io::ReportRow> all;
  const double values[3] = {0.1, 1.0, 10.0};
  for (int pass = 0; pass < 2; ++pass) {
    for (double v : values) {
      SweepSpec s;
      s.axes = {{axis_name, 0.01, 100.0, 200, true}};
      s.tol = tol;
      if (pass == 0) {
        s.fixed = {{"rho", 10.0}, {"epsilon", v}};
      } else {
        s.fixed = {{"epsilon", 10.0}, {"rho", v}};
      }
      if (axis_name != "mass") s.fixed["mass"] = fixed_mass;
      if (axis_name != "momentum") s.fixed["momentum"] = fixed_momentum;
      auto rows = run(s, threads);
      all.insert(all.end(), rows.begin(), rows.end());
    }
  }
  return all;
}

}  // namespace

std::vector<io::ReportRow> figure_rows(int figure_id, double tol,
                                       int threads) {
  switch (figure_id) {
    case 1:
    case 4:
    case 7:
      return run(surface_spec(tol), threads);
    case 2:
      return family_sweeps("momentum", 1.0, 1.0, tol, threads);
    case 3:
      return family_sweeps("mass", 1.0, 1.0, tol, threads);
    case 5:
    case 8: {
      auto rows = family_sweeps("momentum", 1.0, 1.0, tol, threads);
      auto more = family_sweeps("mass", 1.0, 1.0, tol, threads);
      rows.insert(rows.end(), more.begin(), more.end());
      return rows;
    }
    case 6: {
      SweepSpec s;
      s.axes = {{"chi", 0.0, 1.0, 101, false}};
      s.fixed = {{"epsilon", 10.0}, {"rho", 10.0}, {"mass", 1.0},
                 {"momentum", 0.5}};
      s.tol = tol;
      return run(s, threads);
    }
    default:
      throw validation_error("figure id must lie in 1..8");
  }
}

std::string figure_comment(int figure_id, double tol) {
  std::ostringstream os;
  os << "# figure " << figure_id << "; tol=" << io::format_double(tol) << "; ";
  switch (figure_id) {
    case 1:
    case 4:
    case 7:
      os << "axes: epsilon log [0.1,100] n=60, rho log [0.1,100] n=60; "
            "fixed: mass=1 momentum=1 chi=0.70710678118654746";
      break;
    case 2:
      os << "axis: momentum log [0.01,100] n=200 per family; families: "
            "rho=10 epsilon in {0.1,1,10}, then epsilon=10 rho in {0.1,1,10}; "
            "fixed: mass=1 chi=0.70710678118654746";
      break;
    case 3:
      os << "axis: mass log [0.01,100] n=200 per family; families: rho=10 "
            "epsilon in {0.1,1,10}, then epsilon=10 rho in {0.1,1,10}; "
            "fixed: momentum=1 chi=0.70710678118654746";
      break;
    case 5:
    case 8:
      os << "momentum sweeps (mass=1) then mass sweeps (momentum=1), log "
            "[0.01,100] n=200 per family; families: rho=10 epsilon in "
            "{0.1,1,10}, then epsilon=10 rho in {0.1,1,10}; "
            "chi=0.70710678118654746";
      break;
    case 6:
      os << "axis: chi linear [0,1] n=101; fixed: epsilon=10 rho=10 mass=1 "
            "momentum=0.5";
      break;
    default:
      throw validation_error("figure id must lie in 1..8");
  }
  return os.str();
}

bool figure_is_heatmap(int figure_id) {
  return figure_id == 1 || figure_id == 4 || figure_id == 7;
}

std::string figure_observable(int figure_id) {
  switch (figure_id) {
    case 1:
    case 2:
    case 3:
      return "N_pk";
    case 4:
    case 5:
      return "I_pmk";
    case 6:
      return "I_pk";
    case 7:
    case 8:
      return "S_k";
  }
  throw validation_error("figure id must lie in 1..8");
}

void write_csv(std::ostream& out, const std::string& comment,
               const std::vector<io::ReportRow>& rows) {
  out << comment << '\n' << io::kReportCsvHeader << '\n';
  for (const io::ReportRow& r : rows) out << io::report_row_csv(r) << '\n';
}

void write_json(std::ostream& out, const std::string& comment,
                const std::vector<io::ReportRow>& rows) {
  nlohmann::json j;
  j["comment"] = comment;
  j["rows"] = nlohmann::json::array();
  for (const io::ReportRow& r : rows) j["rows"].push_back(io::report_row_json(r));
  out << j.dump(2) << '\n';
}

namespace {

double observable_value(const io::ReportRow& r, const std::string& name) {
  if (name == "N_pk") return r.rep.N_pk;
  if (name == "I_pk") return r.rep.I_pk;
  if (name == "I_pmk") return r.rep.I_pmk;
  if (name == "S_k") return r.rep.S_k;
  if (name == "gamma_sq") return r.rep.gamma_sq;
  throw validation_error("unknown observable '" + name + "'");
}

}  // namespace

std::string figure_svg(int figure_id, const std::vector<io::ReportRow>& rows) {
  const std::string obs = figure_observable(figure_id);
  const int W = 640, H = 480, M = 48;
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W
      << "' height='" << H << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";

  if (figure_is_heatmap(figure_id)) {
    const int n = 60;
    double lo = 1e308, hi = -1e308;
    for (const auto& r : rows) {
      const double v = observable_value(r, obs);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double cw = double(W - 2 * M) / n, ch = double(H - 2 * M) / n;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double v = observable_value(rows[i * n + j], obs);
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.0;
        const int red = static_cast<int>(255 * t);
        const int blue = static_cast<int>(255 * (1.0 - t));
        svg << "<rect x='" << M + i * cw << "' y='" << H - M - (j + 1) * ch
            << "' width='" << cw + 0.5 << "' height='" << ch + 0.5
            << "' fill='rgb(" << red << ",64," << blue << ")'/>\n";
      }
    }
    svg << "<text x='" << M << "' y='" << M - 12 << "' font-size='14'>" << obs
        << " over (epsilon, rho)</text>\n";
  } else {
    // Polyline per contiguous family; x is the swept column.
    double xlo = 1e308, xhi = -1e308, ylo = 1e308, yhi = -1e308;
    auto xval = [&](const io::ReportRow& r) {
      if (figure_id == 6) return r.chi;
      // sweep families pin the other parameter at exactly 1, and the log
      // grids never hit 1 themselves
      return r.mass == 1.0 ? r.momentum : r.mass;
    };
    for (const auto& r : rows) {
      xlo = std::min(xlo, xval(r));
      xhi = std::max(xhi, xval(r));
      const double v = observable_value(r, obs);
      ylo = std::min(ylo, v);
      yhi = std::max(yhi, v);
    }
    if (yhi <= ylo) yhi = ylo + 1.0;
    const bool logx = figure_id != 6;
    auto px = [&](double x) {
      const double t = logx ? (std::log(x) - std::log(xlo)) /
                                  (std::log(xhi) - std::log(xlo))
                            : (x - xlo) / (xhi - xlo);
      return M + t * (W - 2 * M);
    };
    auto py = [&](double y) {
      return H - M - (y - ylo) / (yhi - ylo) * (H - 2 * M);
    };
    const char* colors[6] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                             "#d62728", "#9467bd", "#8c564b"};
    std::size_t start = 0;
    int family = 0;
    while (start < rows.size()) {
      std::size_t end = start + 1;
      while (end < rows.size() && xval(rows[end]) > xval(rows[end - 1])) ++end;
      svg << "<polyline fill='none' stroke='" << colors[family % 6]
          << "' stroke-width='1.5' points='";
      for (std::size_t i = start; i < end; ++i) {
        svg << px(xval(rows[i])) << ',' << py(observable_value(rows[i], obs))
            << ' ';
      }
      svg << "'/>\n";
      start = end;
      ++family;
    }
    svg << "<text x='" << M << "' y='" << M - 12 << "' font-size='14'>" << obs
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rwqc::sweep

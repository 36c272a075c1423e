#pragma once

#include <map>
#include <string>
#include <vector>

#include "rwqc/io.hpp"

namespace rwqc::sweep {

struct Axis {
  std::string name;  // epsilon, rho, mass, momentum or chi
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  bool log_spacing = false;
};

// A rectangular grid over one or two parameters; everything else is pinned.
struct SweepSpec {
  std::vector<Axis> axes;
  std::map<std::string, double> fixed;
  double tol = 1e-10;

  void validate() const;
};

std::vector<double> axis_values(const Axis& axis);

// Worker-pool width: the requested count (or hardware concurrency when 0),
// capped by the RWQC_THREADS environment variable.
int thread_count(int requested);

// Evaluates the grid; row order follows the grid index regardless of the
// number of workers.
std::vector<io::ReportRow> run(const SweepSpec& spec, int threads);

// The data behind one published figure (ids 1..8); possibly several sweep
// families concatenated.
std::vector<io::ReportRow> figure_rows(int figure_id, double tol, int threads);
std::string figure_comment(int figure_id, double tol);
bool figure_is_heatmap(int figure_id);
// Column plotted by the figure's headline panel.
std::string figure_observable(int figure_id);

// Writes rows as CSV with a '#' comment line recording the fixed parameters
// and tolerances.
void write_csv(std::ostream& out, const std::string& comment,
               const std::vector<io::ReportRow>& rows);
void write_json(std::ostream& out, const std::string& comment,
                const std::vector<io::ReportRow>& rows);

// Minimal standalone SVG renderings of figure data.
std::string figure_svg(int figure_id, const std::vector<io::ReportRow>& rows);

}  // namespace rwqc::sweep

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "rwqc/estimate.hpp"
#include "rwqc/measures.hpp"

namespace rwqc::io {

// One evaluated grid point: the inputs plus the correlation report.
struct ReportRow {
  double epsilon = 0.0;
  double rho = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
  double chi = 0.0;
  measures::CorrelationReport rep;
};

// Shortest round-trippable decimal form.
std::string format_double(double v);

// CSV schema: one row per grid point.
extern const char* const kReportCsvHeader;
std::string report_row_csv(const ReportRow& row);

nlohmann::json report_json(const measures::CorrelationReport& rep);
nlohmann::json report_row_json(const ReportRow& row);
nlohmann::json estimation_json(const estimate::EstimationResult& res);

std::string observable_kind_name(estimate::ObservableKind kind);
estimate::ObservableKind parse_observable_kind(const std::string& name);

// Observation CSV: header "k,value,kind"; malformed rows are reported with
// their line number.  Mass and chi arrive out-of-band.
estimate::ObservationSet read_observations_csv(std::istream& in, double mass,
                                               double chi);
void write_observations_csv(std::ostream& out,
                            const estimate::ObservationSet& obs);

}  // namespace rwqc::io

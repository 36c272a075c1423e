#include "rwqc/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "rwqc/errors.hpp"

namespace rwqc::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* const kReportCsvHeader =
    "epsilon,rho,mass,momentum,chi,gamma_sq,N_pk,N_pmk,I_pk,I_pmk,S_p,S_k,"
    "S_pk,terms_used,tail_bound";

std::string report_row_csv(const ReportRow& row) {
  std::ostringstream os;
  const measures::CorrelationReport& r = row.rep;
  os << format_double(row.epsilon) << ',' << format_double(row.rho) << ','
     << format_double(row.mass) << ',' << format_double(row.momentum) << ','
     << format_double(row.chi) << ',' << format_double(r.gamma_sq) << ','
     << format_double(r.N_pk) << ',' << format_double(r.N_pmk) << ','
     << format_double(r.I_pk) << ',' << format_double(r.I_pmk) << ','
     << format_double(r.S_p) << ',' << format_double(r.S_k) << ','
     << format_double(r.S_pk) << ',' << r.terms_used << ','
     << format_double(r.tail_bound);
  return os.str();
}

nlohmann::json report_json(const measures::CorrelationReport& rep) {
  return nlohmann::json{{"gamma_sq", rep.gamma_sq},
                        {"N_pk", rep.N_pk},
                        {"N_pmk", rep.N_pmk},
                        {"S_p", rep.S_p},
                        {"S_k", rep.S_k},
                        {"S_mk", rep.S_mk},
                        {"S_pk", rep.S_pk},
                        {"S_pmk", rep.S_pmk},
                        {"I_pk", rep.I_pk},
                        {"I_pmk", rep.I_pmk},
                        {"monogamy_residual", rep.monogamy_residual},
                        {"terms_used", rep.terms_used},
                        {"tail_bound", rep.tail_bound}};
}

nlohmann::json report_row_json(const ReportRow& row) {
  nlohmann::json j = report_json(row.rep);
  j["epsilon"] = row.epsilon;
  j["rho"] = row.rho;
  j["mass"] = row.mass;
  j["momentum"] = row.momentum;
  j["chi"] = row.chi;
  return j;
}

nlohmann::json estimation_json(const estimate::EstimationResult& res) {
  return nlohmann::json{
      {"epsilon_hat", res.epsilon_hat},
      {"rho_hat", res.rho_hat},
      {"residual_norm", res.residual_norm},
      {"iterations", res.iterations},
      {"converged", res.converged},
      {"covariance",
       {{res.covariance[0][0], res.covariance[0][1]},
        {res.covariance[1][0], res.covariance[1][1]}}}};
}

std::string observable_kind_name(estimate::ObservableKind kind) {
  switch (kind) {
    case estimate::ObservableKind::GammaSq:
      return "gamma_sq";
    case estimate::ObservableKind::MutualInfoQubitAntiboson:
      return "I_pmk";
    case estimate::ObservableKind::BosonEntropy:
      return "S_k";
  }
  throw validation_error("unknown observable kind");
}

estimate::ObservableKind parse_observable_kind(const std::string& name) {
  if (name == "gamma_sq") return estimate::ObservableKind::GammaSq;
  if (name == "I_pmk") return estimate::ObservableKind::MutualInfoQubitAntiboson;
  if (name == "S_k") return estimate::ObservableKind::BosonEntropy;
  throw validation_error("unknown observable kind '" + name +
                         "' (expected gamma_sq, I_pmk or S_k)");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_number(const std::string& s, int line_no, const char* what) {
  // strtod instead of stod: subnormal values are legitimate here and stod
  // rejects them as out of range
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw validation_error("line " + std::to_string(line_no) + ": bad " +
                           what + " value '" + s + "'");
  }
  return v;
}

}  // namespace

estimate::ObservationSet read_observations_csv(std::istream& in, double mass,
                                               double chi) {
  estimate::ObservationSet obs;
  obs.mass = mass;
  obs.chi = chi;
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv_line(line);
    if (!saw_header) {
      if (fields.size() != 3 || fields[0] != "k" || fields[1] != "value" ||
          fields[2] != "kind") {
        throw validation_error("line " + std::to_string(line_no) +
                               ": expected header 'k,value,kind'");
      }
      saw_header = true;
      continue;
    }
    if (fields.size() != 3) {
      throw validation_error("line " + std::to_string(line_no) + ": expected " +
                             "3 fields, got " + std::to_string(fields.size()));
    }
    estimate::Observation o;
    o.momentum = parse_number(fields[0], line_no, "momentum");
    o.value = parse_number(fields[1], line_no, "observable");
    try {
      o.kind = parse_observable_kind(fields[2]);
    } catch (const validation_error& e) {
      throw validation_error("line " + std::to_string(line_no) + ": " +
                             e.what());
    }
    obs.records.push_back(o);
  }
  if (!saw_header) {
    throw validation_error("observation file has no 'k,value,kind' header");
  }
  obs.validate();
  return obs;
}

void write_observations_csv(std::ostream& out,
                            const estimate::ObservationSet& obs) {
  out << "# observations: mass=" << format_double(obs.mass)
      << " chi=" << format_double(obs.chi)
      << " noise_scale=" << format_double(obs.noise_scale)
      << " records=" << obs.records.size() << '\n';
  out << "k,value,kind\n";
  for (const estimate::Observation& o : obs.records) {
    out << format_double(o.momentum) << ',' << format_double(o.value) << ','
        << observable_kind_name(o.kind) << '\n';
  }
}

}  // namespace rwqc::io

#include "sgdci/harness/report.hpp"

#include <cstdio>
#include <fstream>

#include "sgdci/errors.hpp"

namespace sgdci::harness {

namespace {

using nlohmann::json;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json summary_json(const MethodSummary& s) {
  return {{"count", s.count},
          {"covered", s.covered},
          {"coverage", s.coverage},
          {"coverage_fixed_sign", s.coverage_fixed},
          {"mean_width", s.mean_width},
          {"no_accept", s.no_accept},
          {"no_accept_rate", s.no_accept_rate},
          {"table", table_cell(s)}};
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

}  // namespace

void write_intervals_csv(std::ostream& out, std::span<const ReplicationResult> results) {
  out << "replication,method,lower,upper,target,covered,width,accepted\n";
  for (const auto& r : results) {
    for (CiMethod m : {CiMethod::Cov, CiMethod::Bootstrap, CiMethod::Oracle}) {
      const MethodOutcome& o = r[m];
      out << r.index << ',' << to_string(m) << ',';
      if (o.ci) {
        out << fmt(o.ci->lower) << ',' << fmt(o.ci->upper) << ',' << fmt(r.target) << ',' << (o.covered ? 1 : 0)
            << ',' << fmt(o.ci->width()) << ',';
      } else {
        out << ",," << fmt(r.target) << ",,,";
      }
      out << (m == CiMethod::Oracle ? 0 : r.accepted) << '\n';
    }
  }
}

std::string table_cell(const MethodSummary& s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f (%.2f)", s.coverage, 100.0 * s.mean_width);
  return buf;
}

json report_to_json(const ExperimentOutcome& outcome) {
  const CoverageReport& rep = outcome.report;
  json methods = json::object();
  for (const auto& s : rep.methods) methods[std::string(to_string(s.method))] = summary_json(s);

  json candidates = json::array();
  for (const auto& c : outcome.candidates) candidates.push_back(std::vector<double>(c.data(), c.data() + c.size()));

  const Matrix& sw = outcome.oracle.sandwich;
  const Vector a = outcome.config.target_functional();
  json doc = {{"config", config_to_json(outcome.config)},
              {"replications", rep.replications},
              {"methods", methods},
              {"table_row",
               {{"cov", table_cell(rep[CiMethod::Cov])},
                {"bootstrap", table_cell(rep[CiMethod::Bootstrap])},
                {"oracle", table_cell(rep[CiMethod::Oracle])}}},
              {"accepted", {{"mean", rep.mean_accepted}, {"min", rep.min_accepted}, {"max", rep.max_accepted}}},
              {"oracle_variance", a.dot(sw * a)},
              {"candidates", candidates},
              {"wall_seconds", rep.wall_seconds}};
  if (outcome.oracle.hessian_stderr.size() > 0) {
    doc["oracle_mc_stderr"] = {{"hessian_max", outcome.oracle.hessian_stderr.cwiseAbs().maxCoeff()},
                               {"noise_max", outcome.oracle.noise_stderr.cwiseAbs().maxCoeff()}};
  }
  return doc;
}

void write_outputs(const ExperimentOutcome& outcome, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  const auto report_path = dir / "report.json";
  auto report = open_for_write(report_path);
  report << report_to_json(outcome).dump(2) << '\n';
  finish(report, report_path);

  const auto csv_path = dir / "intervals.csv";
  auto csv = open_for_write(csv_path);
  write_intervals_csv(csv, outcome.results);
  finish(csv, csv_path);

  if (outcome.dataset) {
    models::save_dataset(*outcome.dataset, dir / "dataset.json");
  }
}

}  // namespace sgdci::harness

#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "json.hpp"
#include "sgdci/harness/experiment.hpp"

namespace sgdci::harness {

/// One row per (replication, method):
/// replication,method,lower,upper,target,covered,width,accepted
/// Methods without an interval (c = 0) get empty lower/upper/width/covered.
void write_intervals_csv(std::ostream& out, std::span<const ReplicationResult> results);

/// "0.952 (2.95)": coverage, then mean width times 100.
std::string table_cell(const MethodSummary& summary);

nlohmann::json report_to_json(const ExperimentOutcome& outcome);

/// Writes report.json and intervals.csv (plus dataset.json for logistic
/// runs) into `dir`, creating it if needed. Throws IoError.
void write_outputs(const ExperimentOutcome& outcome, const std::filesystem::path& dir);

}  // namespace sgdci::harness

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "finsler/cli/job.hpp"
#include "finsler/tensor.hpp"

namespace finsler::cli {

/// Machine-readable result of one job. `failures` counts failed checks.
struct RunReport {
  nlohmann::ordered_json body;
  int failures = 0;
};

RunReport run_eval(const JobSpec& job);
RunReport run_verify(const JobSpec& job);
RunReport run_classify(const JobSpec& job);
RunReport run_dim_scan(const JobSpec& job);
/// verify, then classify (when fields are given), then dim-scan, in one report.
RunReport run_report(const JobSpec& job);
RunReport run(const JobSpec& job);

/// Nested row-major arrays with an index legend.
nlohmann::ordered_json tensor_json(const std::string& name, const TensorValue& t);
std::string dump(const RunReport& r);

}  // namespace finsler::cli

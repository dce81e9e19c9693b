#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "finsler/cli/job.hpp"
#include "finsler/error.hpp"

namespace finsler::cli::detail {

using json = nlohmann::ordered_json;

/// Running maximum that remembers where it was attained and keeps NaN sticky.
struct Worst {
  double value = 0.0;
  int point = -1;
  void add(double r, int i) {
    if (std::isnan(value)) return;
    if (std::isnan(r) || r > value || point < 0) {
      value = r;
      point = i;
    }
  }
};

/// Ordered list of named checks with residual, threshold and status.
class CheckTable {
 public:
  /// Pass iff residual < threshold; a zero threshold demands an exact zero.
  json& add(const std::string& name, double residual, double threshold, int point = -1);
  json& add(const std::string& name, const Worst& w, double threshold) { return add(name, w.value, threshold, w.point); }
  json& skip(const std::string& name, const std::string& reason);
  json& info(const std::string& name, double value, const std::string& note);
  json& error(const std::string& name, const Error& e);

  /// Runs `body`; an engine error inside it becomes a failed entry.
  void guarded(const std::string& name, const std::function<void()>& body);

  int failures() const noexcept { return failures_; }
  json take() { return std::move(entries_); }

 private:
  json entries_ = json::array();
  int failures_ = 0;
};

double scale(double v);
json number_or_null(double v);
json vector_json(const std::vector<double>& v);

/// Explicit points when given, seeded samples otherwise.
std::vector<SamplePoint> points_for(const JobSpec& job, int n);
/// The first `k` of `pts`.
std::vector<SamplePoint> head(const std::vector<SamplePoint>& pts, std::size_t k);

json metadata(const JobSpec& job, int n);
json tolerances_json(const Tolerances& t);
std::string metric_label(const json& descriptor);

}  // namespace finsler::cli::detail

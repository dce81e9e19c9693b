#include <algorithm>

#include "common.hpp"
#include "finsler/cli/report.hpp"
#include "finsler/sampling.hpp"

namespace finsler::cli {

namespace detail {

double scale(double v) { return std::max(1.0, std::abs(v)); }

json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json vector_json(const std::vector<double>& v) {
  json out = json::array();
  for (double d : v) out.push_back(number_or_null(d));
  return out;
}

json& CheckTable::add(const std::string& name, double residual, double threshold, int point) {
  const bool ok = threshold > 0.0 ? residual < threshold : residual == 0.0;
  if (!ok) ++failures_;
  json e;
  e["name"] = name;
  e["status"] = ok ? "pass" : "fail";
  e["residual"] = number_or_null(residual);
  e["threshold"] = threshold;
  if (point >= 0) e["worst_point"] = point;
  entries_.push_back(std::move(e));
  return entries_.back();
}

json& CheckTable::skip(const std::string& name, const std::string& reason) {
  json e;
  e["name"] = name;
  e["status"] = "skipped";
  e["reason"] = reason;
  entries_.push_back(std::move(e));
  return entries_.back();
}

json& CheckTable::info(const std::string& name, double value, const std::string& note) {
  json e;
  e["name"] = name;
  e["status"] = "info";
  e["value"] = number_or_null(value);
  e["note"] = note;
  entries_.push_back(std::move(e));
  return entries_.back();
}

json& CheckTable::error(const std::string& name, const Error& err) {
  ++failures_;
  json e;
  e["name"] = name;
  e["status"] = "error";
  e["error"] = std::string(to_string(err.code()));
  e["message"] = err.what();
  entries_.push_back(std::move(e));
  return entries_.back();
}

void CheckTable::guarded(const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    error(name, e);
  }
}

std::vector<SamplePoint> points_for(const JobSpec& job, int n) {
  if (!job.points.empty()) return job.points;
  return sample_points(n, job.samples.count, job.samples.seed, job.samples.radius);
}

std::vector<SamplePoint> head(const std::vector<SamplePoint>& pts, std::size_t k) {
  return {pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(std::min(k, pts.size()))};
}

json tolerances_json(const Tolerances& t) {
  json j;
  j["fd"] = t.fd;
  j["euler"] = t.euler;
  j["ladder"] = t.ladder;
  j["horizontal"] = t.horizontal;
  j["spray"] = t.spray;
  j["s_curvature"] = t.s_curvature;
  j["volume"] = t.volume;
  j["relations"] = t.relations;
  j["funk_s"] = t.funk_s;
  j["funk_ricci"] = t.funk_ricci;
  j["classify"] = t.classify;
  j["identities"] = t.identities;
  j["dim_scan"] = t.dim_scan;
  return j;
}

json metadata(const JobSpec& job, int n) {
  json m;
  m["schema_version"] = kSchemaVersion;
  m["command"] = to_string(job.command);
  m["metric"] = job.metric;
  m["dimension"] = n;
  m["order"] = job.order;
  json s;
  if (job.points.empty()) {
    s["count"] = job.samples.count;
    s["seed"] = job.samples.seed;
    s["radius"] = job.samples.radius;
  } else {
    s["explicit_points"] = job.points.size();
  }
  m["samples"] = s;
  m["tolerances"] = tolerances_json(job.tol);
  return m;
}

std::string metric_label(const json& d) {
  if (d.contains("builtin")) return d["builtin"].get<std::string>();
  return "randers";
}

}  // namespace detail

using detail::json;

json tensor_json(const std::string& name, const TensorValue& t) {
  json out;
  out["legend"] = legend(name, t.variance());
  out["variance"] = t.variance();
  json shape = json::array();
  for (int k = 0; k < t.rank(); ++k) shape.push_back(t.dim());
  out["shape"] = shape;
  // Nested arrays, last index fastest.
  std::function<json(int, std::size_t)> nest = [&](int slot, std::size_t base) -> json {
    if (slot == t.rank()) return detail::number_or_null(t[base]);
    json arr = json::array();
    const std::size_t stride = t.stride(slot);
    for (int i = 0; i < t.dim(); ++i) arr.push_back(nest(slot + 1, base + static_cast<std::size_t>(i) * stride));
    return arr;
  };
  out["values"] = t.size() == 0 ? json(nullptr) : nest(0, 0);
  return out;
}

std::string dump(const RunReport& r) { return r.body.dump(2) + "\n"; }

RunReport run(const JobSpec& job) {
  switch (job.command) {
    case Command::eval: return run_eval(job);
    case Command::verify: return run_verify(job);
    case Command::classify: return run_classify(job);
    case Command::dim_scan: return run_dim_scan(job);
    case Command::report: return run_report(job);
  }
  throw Error(ErrorCode::SchemaError, "unknown command");
}

}  // namespace finsler::cli

#include <algorithm>

#include "common.hpp"
#include "finsler/cli/report.hpp"
#include "finsler/dimension.hpp"
#include "finsler/library.hpp"
#include "finsler/projective.hpp"

namespace finsler::cli {

using detail::CheckTable;
using detail::json;

namespace {

json flags_json(const ClassificationFlags& f, bool alpha) {
  json j;
  if (alpha) j["killing_alpha"] = f.killing_alpha;
  j["killing_F"] = f.killing_F;
  j["affine"] = f.affine;
  j["projective"] = f.projective;
  j["special"] = f.special;
  j["c_projective"] = f.c_projective;
  j["h_invariant"] = f.h_invariant;
  return j;
}

json factor_json(const ProjectiveFactorData& d) {
  json j;
  j["P"] = detail::number_or_null(d.P);
  j["P_i"] = tensor_json("P", d.P_i);
  j["P_ij"] = tensor_json("P", d.P_ij);
  j["P_cov"] = tensor_json("P", d.P_cov);
  j["residual"] = detail::number_or_null(d.residual);
  return j;
}

json classification_body(const JobSpec& job, const MetricModel& m, std::span<const PolyVectorField> fields,
                         const std::vector<SamplePoint>& pts, CheckTable& checks) {
  ClassifyOptions opt;
  opt.tol = job.tol.classify;
  opt.order = std::max(job.order, 7);
  json table = json::array();
  std::vector<ClassificationReport> reports;
  checks.guarded("c_projective_equivalence", [&] {
    reports = classify(fields, m, pts, opt);
    checks.add("c_projective_equivalence", 0.0, 0.0);
  });
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    json e;
    e["field"] = r.field;
    e["flags"] = flags_json(r.flags, r.alpha_available);
    e["threshold"] = opt.tol;
    json res;
    for (const auto& nr : r.residuals) res[nr.name] = detail::number_or_null(nr.residual);
    e["residuals"] = std::move(res);
    if (r.factor) e["factor"] = factor_json(*r.factor);
    if (r.flags.projective) {
      for (const char* id : {"proj3", "proj11", "c_proj12"}) {
        checks.add(r.field + "." + id, r.residual(id), job.tol.identities);
      }
    }
    if (r.alpha_available) {
      try {
        const auto sc = special_conditions(fields[k], m, pts);
        json s;
        s["residual_i"] = detail::number_or_null(sc.residual_i);
        s["residual_ii"] = detail::number_or_null(sc.residual_ii);
        s["c"] = detail::number_or_null(sc.c);
        e["special_conditions"] = std::move(s);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::IsotropyUnknown) throw;
        e["special_conditions"] = {{"skipped", "S-curvature is not isotropic"}};
      }
    }
    table.push_back(std::move(e));
  }
  return table;
}

json dim_scan_body(const JobSpec& job, const MetricModel& m, CheckTable& checks) {
  const int n = m.dim();
  auto family = flat_projective_basis(n);
  const auto extra = build_fields(job.fields, n);
  family.insert(family.end(), extra.begin(), extra.end());
  DimScanOptions opt;
  opt.count = job.samples.count;
  opt.seed = job.samples.seed;
  opt.radius = job.samples.radius;
  opt.rel_threshold = job.tol.dim_scan;
  json out;
  out["family_size"] = family.size();
  out["extra_fields"] = extra.size();
  out["order"] = opt.order;
  checks.guarded("dim_scan", [&] {
    const auto r = dim_scan(m, family, opt);
    out["nullity"] = r.nullity;
    out["rows"] = r.rows;
    out["columns"] = r.columns;
    out["family_rank"] = r.family_rank;
    out["points"] = r.points;
    out["rounds"] = r.rounds;
    out["threshold"] = r.threshold;
    out["nullity_history"] = r.nullity_history;
    out["singular_values"] = detail::vector_json(r.singular_values);
    if (job.expect_nullity) {
      auto& e = checks.add("nullity", std::abs(static_cast<double>(r.nullity - *job.expect_nullity)), 0.0);
      e["expected"] = *job.expect_nullity;
      e["nullity"] = r.nullity;
    } else {
      checks.info("nullity", r.nullity, "no expectation given");
    }
  });
  return out;
}

}  // namespace

RunReport run_classify(const JobSpec& job) {
  const MetricModel m = build_metric(job.metric);
  const int n = m.dim();
  const auto fields = build_fields(job.fields, n);
  const auto pts = detail::points_for(job, n);
  RunReport rep;
  rep.body["metadata"] = detail::metadata(job, n);
  CheckTable checks;
  rep.body["classification"] = classification_body(job, m, fields, pts, checks);
  rep.failures = checks.failures();
  rep.body["checks"] = checks.take();
  rep.body["summary"] = {{"failures", rep.failures}, {"pass", rep.failures == 0}};
  return rep;
}

RunReport run_dim_scan(const JobSpec& job) {
  const MetricModel m = build_metric(job.metric);
  RunReport rep;
  rep.body["metadata"] = detail::metadata(job, m.dim());
  CheckTable checks;
  rep.body["dim_scan"] = dim_scan_body(job, m, checks);
  rep.failures = checks.failures();
  rep.body["checks"] = checks.take();
  rep.body["summary"] = {{"failures", rep.failures}, {"pass", rep.failures == 0}};
  return rep;
}

RunReport run_report(const JobSpec& job) {
  const MetricModel m = build_metric(job.metric);
  const int n = m.dim();
  RunReport rep;
  rep.body["metadata"] = detail::metadata(job, n);

  RunReport verify = run_verify(job);
  rep.body["verify"] = {{"facts", verify.body["facts"]}, {"checks", verify.body["checks"]}};
  rep.failures += verify.failures;

  if (!job.fields.empty()) {
    CheckTable checks;
    const auto fields = build_fields(job.fields, n);
    const auto pts = detail::points_for(job, n);
    json table = classification_body(job, m, fields, pts, checks);
    rep.failures += checks.failures();
    rep.body["classify"] = {{"classification", std::move(table)}, {"checks", checks.take()}};
  }

  CheckTable scan_checks;
  json scan = dim_scan_body(job, m, scan_checks);
  rep.failures += scan_checks.failures();
  rep.body["dim_scan"] = {{"result", std::move(scan)}, {"checks", scan_checks.take()}};
  rep.body["summary"] = {{"failures", rep.failures}, {"pass", rep.failures == 0}};
  return rep;
}

}  // namespace finsler::cli

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <set>

#include "common.hpp"
#include "finsler/cli/report.hpp"
#include "finsler/geometry.hpp"
#include "finsler/invariants.hpp"
#include "finsler/library.hpp"
#include "finsler/projective.hpp"
#include "finsler/randers.hpp"
#include "finsler/s_quantities.hpp"

namespace finsler::cli {

using detail::CheckTable;
using detail::json;
using detail::scale;
using detail::Worst;

namespace {

constexpr double kFdStep = 1e-4;
constexpr double kRiemannianSkewTol = 1e-9;
constexpr double kIsotropyTol = 1e-8;
constexpr double kVanishingTol = 1e-7;
constexpr std::size_t kVolumePoints = 3;
constexpr std::size_t kInvariancePoints = 5;

bool projectively_flat(const std::string& label) {
  static const std::set<std::string> flat = {"funk", "euclidean", "klein", "space-form", "minkowski-randers"};
  return flat.count(label) > 0;
}

double eval_at(const MetricModel& m, const std::vector<double>& z) {
  const std::size_t n = z.size() / 2;
  return m(std::span<const double>(z.data(), n), std::span<const double>(z.data() + n, n));
}

/// Relative error of the jet first and second partials against central differences.
double fd_residual(const MetricModel& m, const SamplePoint& p) {
  const int n = m.dim();
  const int nv = 2 * n;
  JetContext ctx(p.x, p.y, 2);
  const Jet J = m.F().evaluate(ctx);
  std::vector<double> z(p.x);
  z.insert(z.end(), p.y.begin(), p.y.end());
  const double h = kFdStep;
  auto shifted = [&](int i, double di, int j, double dj) {
    auto w = z;
    w[static_cast<std::size_t>(i)] += di;
    w[static_cast<std::size_t>(j)] += dj;
    return eval_at(m, w);
  };
  const double f0 = eval_at(m, z);
  double worst = 0.0;
  std::vector<int> alpha(static_cast<std::size_t>(nv), 0);
  for (int i = 0; i < nv; ++i) {
    alpha.assign(alpha.size(), 0);
    alpha[static_cast<std::size_t>(i)] = 1;
    const double ad = J.derivative(alpha);
    const double fd = (shifted(i, h, i, 0.0) - shifted(i, -h, i, 0.0)) / (2 * h);
    worst = std::max(worst, std::abs(ad - fd) / scale(ad));
    for (int j = i; j < nv; ++j) {
      alpha.assign(alpha.size(), 0);
      ++alpha[static_cast<std::size_t>(i)];
      ++alpha[static_cast<std::size_t>(j)];
      const double ad2 = J.derivative(alpha);
      double fd2;
      if (i == j) {
        fd2 = (shifted(i, h, i, 0.0) - 2 * f0 + shifted(i, -h, i, 0.0)) / (h * h);
      } else {
        fd2 = (shifted(i, h, j, h) - shifted(i, h, j, -h) - shifted(i, -h, j, h) + shifted(i, -h, j, -h)) /
              (4 * h * h);
      }
      worst = std::max(worst, std::abs(ad2 - fd2) / scale(ad2));
    }
  }
  return worst;
}

/// Every ordered chain of up to four differentiations must land on the
/// same value as the stored mixed partial.
double mixed_partial_residual(const MetricModel& m, const SamplePoint& p) {
  const int nv = 2 * m.dim();
  JetContext ctx(p.x, p.y, 4);
  const Jet J = m.F().evaluate(ctx);
  std::vector<int> alpha(static_cast<std::size_t>(nv), 0);
  double worst = 0.0;
  std::function<void(const Jet&, int)> walk = [&](const Jet& f, int depth) {
    if (depth > 0) worst = std::max(worst, std::abs(f.value() - J.derivative(alpha)));
    if (depth == 4) return;
    for (int v = 0; v < nv; ++v) {
      ++alpha[static_cast<std::size_t>(v)];
      walk(f.diff(v), depth + 1);
      --alpha[static_cast<std::size_t>(v)];
    }
  };
  walk(J, 0);
  return worst;
}

struct Ladder {
  double euler = 0.0;
  double ladder = 0.0;
};

Ladder ladder_residual(const MetricModel& m, const SamplePoint& p) {
  const int n = m.dim();
  JetContext ctx(p.x, p.y, 2);
  const Jet F = m.F().evaluate(ctx);
  const Jet F2 = F * F;
  double yF = 0.0, yyF = 0.0, yF2 = 0.0, yyF2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double yi = p.y[static_cast<std::size_t>(i)];
    const Jet Fi = F.diff(n + i);
    const Jet F2i = F2.diff(n + i);
    yF += yi * Fi.value();
    yF2 += yi * F2i.value();
    for (int j = 0; j < n; ++j) {
      const double yj = p.y[static_cast<std::size_t>(j)];
      yyF += yi * yj * Fi.diff(n + j).value();
      yyF2 += yi * yj * F2i.diff(n + j).value();
    }
  }
  const double f = F.value();
  const double f2 = F2.value();
  Ladder out;
  out.euler = std::abs(yF - f) / scale(f);
  out.ladder = std::max({std::abs(yyF + yF - f) / scale(f), std::abs(yF2 - 2 * f2) / scale(f2),
                         std::abs(yyF2 - 2 * f2) / scale(f2)});
  return out;
}

struct SprayLadder {
  double homogeneity = 0.0;
  double symmetry = 0.0;
};

SprayLadder spray_ladder(LocalGeometry& geo, const SamplePoint& p) {
  const int n = geo.dim();
  const TensorValue G = values(geo.spray());
  const TensorValue Gj = values(geo.connection());
  const TensorValue Gjk = values(geo.berwald());
  const double s = scale(std::max({max_abs(G), max_abs(Gj), max_abs(Gjk)}));
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double c = 0.0;
    for (int k = 0; k < n; ++k) c += Gj(i, k) * p.y[static_cast<std::size_t>(k)];
    worst = std::max(worst, std::abs(c - 2 * G(i)) / s);
    for (int k = 0; k < n; ++k) {
      double d = 0.0;
      for (int j = 0; j < n; ++j) d += Gjk(i, j, k) * p.y[static_cast<std::size_t>(j)];
      worst = std::max(worst, std::abs(d - Gj(i, k)) / s);
    }
  }
  return {worst, symmetry_residual(Gjk) / s};
}

VolumeForm custom_volume() {
  return VolumeForm::custom("1+0.1x1", [](std::span<const Jet> x) { return 1.0 + 0.1 * x[0]; });
}

VolumeForm second_custom_volume() {
  return VolumeForm::custom("1/(1+0.2|x|^2)", [](std::span<const Jet> x) {
    Jet r = x[0] * x[0];
    for (std::size_t i = 1; i < x.size(); ++i) r += x[i] * x[i];
    return 1.0 / (1.0 + 0.2 * r);
  });
}

struct Isotropy {
  double c = 0.0;
  double y_dependence = 0.0;
};

/// c(x) = e00 / (2(alpha^2 - beta^2)); isotropic S-curvature iff it is independent of y.
Isotropy isotropy_at(const RandersStructure& rs, const SamplePoint& p) {
  const int n = static_cast<int>(p.x.size());
  LocalRanders r(rs, p, 4);
  const Jet a2 = r.alpha() * r.alpha();
  const Jet b2 = r.beta() * r.beta();
  const Jet c = r.e00() / (2.0 * (a2 - b2));
  Isotropy out;
  out.c = c.value();
  for (int i = 0; i < n; ++i) out.y_dependence = std::max(out.y_dependence, std::abs(c.diff(n + i).value()));
  return out;
}

/// G - [G_alpha + (c(alpha - beta) - s0) y + alpha s^i_0].
double isotropic_spray_residual(const RandersStructure& rs, const SamplePoint& p, double c) {
  const int n = static_cast<int>(p.x.size());
  LocalRanders r(rs, p, 3);
  const TensorValue G = values(r.spray());
  const TensorValue Ga = values(r.spray_alpha());
  const TensorValue s0up = values(r.s0_up());
  const double alpha = r.alpha().value();
  const double beta = r.beta().value();
  const double s0 = r.s0().value();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double model = Ga(i) + (c * (alpha - beta) - s0) * p.y[static_cast<std::size_t>(i)] + alpha * s0up(i);
    worst = std::max(worst, std::abs(G(i) - model));
  }
  return worst / scale(max_abs(G));
}

void run_point_suites(CheckTable& checks, const MetricModel& m, const std::string& label,
                      const std::vector<SamplePoint>& pts, const JobSpec& job, json& facts) {
  const int n = m.dim();
  const auto* rs = m.randers_structure();
  const int order = std::max(job.order, 6);

  checks.guarded("ad_vs_fd", [&] {
    Worst w;
    for (std::size_t p = 0; p < pts.size(); ++p) w.add(fd_residual(m, pts[p]), static_cast<int>(p));
    checks.add("ad_vs_fd", w, job.tol.fd);
  });
  checks.guarded("mixed_partial_symmetry", [&] {
    Worst w;
    for (std::size_t p = 0; p < pts.size(); ++p) w.add(mixed_partial_residual(m, pts[p]), static_cast<int>(p));
    checks.add("mixed_partial_symmetry", w, 0.0);
  });
  checks.guarded("euler", [&] {
    Worst e, l;
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const auto r = ladder_residual(m, pts[p]);
      e.add(r.euler, static_cast<int>(p));
      l.add(r.ladder, static_cast<int>(p));
    }
    checks.add("euler", e, job.tol.euler);
    checks.add("homogeneity_ladder", l, job.tol.ladder);
  });

  Worst spray_h, berwald_sym, horiz, contraction, skew, spray_dual, s_dual, xi_norm, vol_indep, funk_s, funk_ric;
  std::array<Worst, 8> relation;
  std::vector<std::string> relation_names;
  std::set<int> funk_signs;
  bool pipeline_ok = false;
  checks.guarded("geometry_pipeline", [&] {
    const VolumeForm vol = default_volume(m);
    std::vector<VolumeForm> vols = {vol, custom_volume()};
    vols.push_back(vol.kind == VolumeKind::coordinate ? second_custom_volume() : VolumeForm::coordinate(n));
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const int ip = static_cast<int>(p);
      LocalGeometry geo(m, pts[p], order);
      const auto sl = spray_ladder(geo, pts[p]);
      spray_h.add(sl.homogeneity, ip);
      berwald_sym.add(sl.symmetry, ip);
      const double F = geo.F().value();
      double hk = 0.0;
      for (const Jet& d : geo.horizontal(geo.F())) hk = std::max(hk, std::abs(d.value()));
      horiz.add(hk / scale(F), ip);
      const TensorValue R = values(geo.riemann());
      double ry = 0.0;
      for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += R(i, k) * pts[p].y[static_cast<std::size_t>(k)];
        ry = std::max(ry, std::abs(s));
      }
      contraction.add(ry / scale(max_abs(R)), ip);
      if (m.kind() == MetricKind::riemannian) skew.add(max_abs(values(geo.ricci_skew())), ip);

      std::vector<SCurvatureField> sqs;
      for (const auto& v : vols) sqs.emplace_back(geo, v);
      const auto rel = relations_check(sqs[0]);
      relation_names.clear();
      for (std::size_t k = 0; k < rel.entries.size() && k < relation.size(); ++k) {
        relation[k].add(rel.entries[k].residual, ip);
        relation_names.push_back(rel.entries[k].name);
      }
      const TensorValue sigma0 = values(sqs[0].sigma());
      double vi = 0.0;
      for (std::size_t k = 1; k < sqs.size(); ++k) {
        vi = std::max(vi, max_abs_diff(sigma0, values(sqs[k].sigma())) / scale(max_abs(sigma0)));
      }
      vol_indep.add(vi, ip);
      xi_norm.add(max_abs(values(sqs[0].xi())), ip);

      if (rs) {
        LocalRanders r(*rs, geo.x(), geo.y());
        const TensorValue Gg = values(geo.spray());
        spray_dual.add(max_abs_diff(values(r.spray()), Gg) / scale(max_abs(Gg)), ip);
        if (vol.kind == VolumeKind::busemann_hausdorff) {
          const double S = sqs[0].S().value();
          s_dual.add(std::abs(r.s_curvature().value() - S) / scale(S), ip);
        }
      }
      if (label == "funk") {
        const double ratio = sqs[0].S().value() / ((n + 1) * F);
        funk_s.add(std::abs(std::abs(ratio) - 0.5), ip);
        funk_signs.insert(ratio > 0 ? 1 : -1);
        const double ric = geo.ricci_scalar().value();
        funk_ric.add(std::abs(ric + (n - 1) * F * F / 4.0) / (F * F), ip);
      }
    }
    facts["volume_forms"] = json::array();
    for (const auto& v : vols) facts["volume_forms"].push_back(v.name);
    pipeline_ok = true;
  });
  if (!pipeline_ok) return;

  checks.add("spray_homogeneity", spray_h, job.tol.ladder);
  checks.add("berwald_symmetry", berwald_sym, job.tol.ladder);
  checks.add("horizontal_F", horiz, job.tol.horizontal);
  checks.add("riemann_contraction", contraction, job.tol.horizontal);
  if (m.kind() == MetricKind::riemannian) {
    checks.add("ricci_skew_riemannian", skew, kRiemannianSkewTol);
  } else {
    checks.skip("ricci_skew_riemannian", "metric is not Riemannian");
  }
  for (std::size_t k = 0; k < relation_names.size(); ++k) {
    checks.add("relation_" + relation_names[k], relation[k], job.tol.relations);
  }
  checks.add("volume_independence", vol_indep, job.tol.relations);

  if (rs) {
    checks.add("spray_dual_path", spray_dual, job.tol.spray);
    checks.add("s_dual_path", s_dual, job.tol.s_curvature);
    checks.guarded("bh_volume_dual_path", [&] {
      Worst w;
      const auto sub = detail::head(pts, kVolumePoints);
      for (std::size_t p = 0; p < sub.size(); ++p) {
        const double closed = bh_volume(m, sub[p].x, VolumeMethod::closed_form_randers);
        const double integ = bh_volume(m, sub[p].x, VolumeMethod::indicatrix_integration);
        w.add(std::abs(closed - integ) / scale(closed), static_cast<int>(p));
      }
      checks.add("bh_volume_dual_path", w, job.tol.volume)["points"] = sub.size();
    });

    // Isotropy of the S-curvature decides which checks apply.
    std::optional<bool> isotropic;
    Worst ydep;
    Worst cdev;
    double c_first = 0.0;
    checks.guarded("isotropy", [&] {
      for (std::size_t p = 0; p < pts.size(); ++p) {
        const auto iso = isotropy_at(*rs, pts[p]);
        ydep.add(iso.y_dependence, static_cast<int>(p));
        cdev.add(std::abs(std::abs(iso.c) - 0.5), static_cast<int>(p));
        if (p == 0) c_first = iso.c;
      }
      isotropic = ydep.value < kIsotropyTol;
      if (label == "funk") {
        checks.add("isotropy", ydep, kIsotropyTol);
        checks.add("funk_c_magnitude", cdev, kIsotropyTol)["c"] = c_first;
      } else if (*isotropic) {
        checks.add("isotropy", ydep, kIsotropyTol)["c"] = c_first;
      } else {
        checks.info("isotropy", ydep.value, "S-curvature is not isotropic");
      }
    });
    if (isotropic && *isotropic) {
      checks.add("xi_vanishes", xi_norm, kVanishingTol);
      checks.guarded("isotropic_spray_form", [&] {
        Worst w;
        for (std::size_t p = 0; p < pts.size(); ++p) {
          w.add(isotropic_spray_residual(*rs, pts[p], isotropy_at(*rs, pts[p]).c), static_cast<int>(p));
        }
        checks.add("isotropic_spray_form", w, job.tol.spray);
      });
    } else {
      checks.skip("xi_vanishes", "S-curvature is not isotropic")["max_norm"] = detail::number_or_null(xi_norm.value);
      checks.skip("isotropic_spray_form", "S-curvature is not isotropic");
    }
  } else {
    checks.skip("spray_dual_path", "metric has no Randers split");
    checks.skip("s_dual_path", "metric has no Randers split");
    checks.skip("bh_volume_dual_path", "metric has no Randers split");
  }

  if (label == "funk") {
    auto& e = checks.add("funk_s_constant", funk_s, job.tol.funk_s);
    e["sign"] = funk_signs.size() == 1 ? json(*funk_signs.begin()) : json("mixed");
    checks.add("funk_ricci", funk_ric, job.tol.funk_ricci);
  }
}

void run_projective_suites(CheckTable& checks, const MetricModel& m, const std::string& label,
                           const std::vector<SamplePoint>& pts, const JobSpec& job, json& facts) {
  const int n = m.dim();
  const auto basis = flat_projective_basis(n);
  std::vector<ClassificationReport> reports;
  checks.guarded("c_projective_equivalence", [&] {
    ClassifyOptions opt;
    opt.tol = job.tol.classify;
    opt.order = std::max(job.order, 7);
    reports = classify(basis, m, pts, opt);
    checks.add("c_projective_equivalence", 0.0, 0.0)["fields"] = basis.size();
  });
  if (reports.empty()) return;

  std::vector<PolyVectorField> projective;
  int disagreements = 0;
  Worst proj3, proj11, cproj12, closure;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    if (!r.flags.projective) continue;
    projective.push_back(basis[k]);
    const double t = job.tol.classify;
    const bool a = r.residual("closed") < t;
    const bool b = r.residual("lie_sigma") < t;
    const bool c = r.residual("lie_xi") < t;
    if (a != b || b != c) ++disagreements;
    proj3.add(r.residual("proj3"), static_cast<int>(k));
    proj11.add(r.residual("proj11"), static_cast<int>(k));
    cproj12.add(r.residual("c_proj12"), static_cast<int>(k));
    closure.add(std::max({r.residual("closed"), r.residual("lie_sigma"), r.residual("lie_xi")}), static_cast<int>(k));
  }
  facts["flat_basis_projective"] = projective.size();
  if (projectively_flat(label)) {
    checks.add("flat_basis_projective", static_cast<double>(basis.size() - projective.size()), 0.0)["fields"] =
        basis.size();
  }
  if (projective.empty()) {
    checks.skip("projective_identities", "no projective field in the flat basis");
    checks.skip("invariance_suite", "no projective field in the flat basis");
    return;
  }
  checks.add("c_projective_agreement", static_cast<double>(disagreements), 0.0);
  checks.add("proj3", proj3.value, job.tol.identities, proj3.point)["worst_field"] = basis[static_cast<std::size_t>(proj3.point)].name();
  checks.add("proj11", proj11.value, job.tol.identities, proj11.point)["worst_field"] = basis[static_cast<std::size_t>(proj11.point)].name();
  checks.add("c_proj12", cproj12.value, job.tol.identities, cproj12.point)["worst_field"] = basis[static_cast<std::size_t>(cproj12.point)].name();
  if (label == "funk") {
    checks.add("funk_c_projective", closure.value, job.tol.classify, closure.point)["worst_field"] =
        basis[static_cast<std::size_t>(closure.point)].name();
  }

  const auto sub = detail::head(pts, kInvariancePoints);
  checks.guarded("invariance_suite", [&] {
    const auto suites = invariance_suite(projective, m, sub, job.tol.classify);
    std::vector<std::string> names;
    std::vector<Worst> worst;
    std::vector<double> thresholds;
    for (std::size_t f = 0; f < suites.size(); ++f) {
      for (const auto& e : suites[f].entries) {
        auto it = std::find(names.begin(), names.end(), e.name);
        std::size_t idx = static_cast<std::size_t>(it - names.begin());
        if (it == names.end()) {
          names.push_back(e.name);
          worst.emplace_back();
          thresholds.push_back(e.threshold);
        }
        if (e.applicable) worst[idx].add(e.residual, static_cast<int>(f));
      }
    }
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (worst[k].point < 0) {
        checks.skip("invariance_" + names[k], "no field in the applicable class");
        continue;
      }
      auto& e = checks.add("invariance_" + names[k], worst[k].value, thresholds[k]);
      e["worst_field"] = projective[static_cast<std::size_t>(worst[k].point)].name();
      e["points"] = sub.size();
    }
  });

  if (projectively_flat(label)) {
    checks.guarded("invariant_tensors", [&] {
      Worst D, W, Z;
      for (std::size_t p = 0; p < sub.size(); ++p) {
        const auto t = invariant_tensors(m, sub[p]);
        D.add(max_abs(t.D), static_cast<int>(p));
        W.add(max_abs(t.W), static_cast<int>(p));
        Z.add(max_abs(t.Z), static_cast<int>(p));
      }
      checks.add("douglas_vanishes", D, kVanishingTol);
      checks.add("weyl_vanishes", W, kVanishingTol);
      checks.add("z_vanishes", Z, kVanishingTol);
    });
  }
}

}  // namespace

RunReport run_verify(const JobSpec& job) {
  const MetricModel m = build_metric(job.metric);
  const int n = m.dim();
  const std::string label = detail::metric_label(job.metric);
  const auto pts = detail::points_for(job, n);

  RunReport rep;
  rep.body["metadata"] = detail::metadata(job, n);
  json facts;
  facts["metric"] = m.name();
  CheckTable checks;
  run_point_suites(checks, m, label, pts, job, facts);
  run_projective_suites(checks, m, label, pts, job, facts);
  rep.failures = checks.failures();
  rep.body["facts"] = std::move(facts);
  rep.body["checks"] = checks.take();
  rep.body["summary"] = {{"failures", rep.failures}, {"pass", rep.failures == 0}};
  return rep;
}

}  // namespace finsler::cli

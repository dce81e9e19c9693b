#include "finsler/projective.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <sstream>

#include "finsler/error.hpp"
#include "finsler/invariants.hpp"
#include "finsler/randers.hpp"
#include "finsler/s_quantities.hpp"

namespace finsler {

namespace {

double max_abs_value(const JetTensor& t) {
  double m = 0.0;
  for (const Jet& j : t.data()) m = std::max(m, std::abs(j.value()));
  return m;
}

double rel(double residual, double scale) { return residual / std::max(1.0, scale); }

/// Relative size of L T against T.
double lie_residual(const CompleteLift& L, const JetTensor& t) {
  return rel(max_abs_value(L.lie(t)), max_abs_value(t));
}

/// Geometry shared by every field probed at one sample point.
struct PointState {
  PointState(const MetricModel& m, const SamplePoint& at, int order)
      : geo(m, at, order), sq(geo, default_volume(m)) {
    if (const RandersStructure* rs = m.randers_structure()) lr.emplace(*rs, geo.x(), geo.y());
  }
  PointState(const PointState&) = delete;
  PointState& operator=(const PointState&) = delete;

  LocalGeometry geo;
  SCurvatureField sq;
  std::optional<LocalRanders> lr;
};

enum Probe : std::size_t {
  kKillingF,
  kAffine,
  kProjective,
  kSpecial,
  kClosed,
  kLieSigma,
  kLieXi,
  kHInvariant,
  kProj3,
  kProj11,
  kCProj12,
  kKillingAlpha,
  kAlphaProjective,
  kLieAlphaS,
  kFactorRemark,
  kProbeCount
};

constexpr std::array<const char*, kProbeCount> kProbeNames = {
    "killing_F", "affine",      "projective",    "special",          "closed",
    "lie_sigma", "lie_xi",      "h_invariant",   "proj3",            "proj11",
    "c_proj12",  "killing_alpha", "alpha_projective", "lie_alpha_s", "factor_remark"};

struct ProbeResult {
  std::array<double, kProbeCount> r{};
  ProjectiveFactorData factor;
};

ProbeResult probe(PointState& ps, const PolyVectorField& V, bool want_factor) {
  LocalGeometry& geo = ps.geo;
  const int n = geo.dim();
  const auto y = geo.y();
  const CompleteLift L(V, geo.x(), y);
  ProbeResult out;
  auto& r = out.r;

  r[kKillingF] = rel(std::abs(L.apply(geo.F()).value()), std::abs(geo.F().value()));

  const JetTensor LG = L.lie_spray(geo.spray());
  const Jet P = extract_factor(LG, y);
  double dev = 0.0;
  for (int i = 0; i < n; ++i) {
    dev = std::max(dev, std::abs(LG(i).value() - P.value() * y[static_cast<std::size_t>(i)].value()));
  }
  r[kProjective] = rel(dev, max_abs_value(LG));

  // L G^i_k and L G^i_jk are y-derivatives of L G^i.
  const JetTensor LGk = geo.vertical(LG);
  const JetTensor LGjk = geo.vertical(LGk);
  r[kAffine] = rel(max_abs_value(LGjk), max_abs_value(geo.berwald()));

  JetTensor Pi(n, "d");
  for (int i = 0; i < n; ++i) Pi(i) = P.diff(geo.y_var(i));
  const JetTensor Pij = geo.vertical(Pi);
  const JetTensor Pcov = geo.cov_deriv(Pi);  // (i, j) = P_i|j
  const JetTensor Pijc = geo.cov_deriv(Pij);  // (l, j, m) = P_lj|m

  double closed = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) closed = std::max(closed, std::abs(Pcov(i, j).value() - Pcov(j, i).value()));
  }
  r[kClosed] = rel(closed, max_abs_value(Pcov));

  r[kSpecial] = lie_residual(L, ps.sq.e());
  r[kLieSigma] = lie_residual(L, ps.sq.sigma());
  r[kLieXi] = lie_residual(L, ps.sq.xi());
  r[kHInvariant] = lie_residual(L, ps.sq.h());

  // L G^i_k = P delta^i_k + P_k y^i
  double p3 = 0.0, s3 = max_abs_value(LGk);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double rhs = (i == k ? P.value() : 0.0) + Pi(k).value() * y[static_cast<std::size_t>(i)].value();
      p3 = std::max(p3, std::abs(LGk(i, k).value() - rhs));
      s3 = std::max(s3, std::abs(rhs));
    }
  }
  r[kProj3] = rel(p3, s3);

  // L K_jl = P_l|j - n P_j|l + P_lj|0
  const TensorValue LK = values(L.lie(geo.ricci_tensor()));
  const TensorValue LRs = values(L.lie(geo.ricci_skew()));
  double p11 = 0.0, s11 = max_abs(LK), p12 = 0.0, s12 = max_abs(LRs);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      double pl0 = 0.0;
      for (int m = 0; m < n; ++m) pl0 += y[static_cast<std::size_t>(m)].value() * Pijc(l, j, m).value();
      const double rhs11 = Pcov(l, j).value() - n * Pcov(j, l).value() + pl0;
      p11 = std::max(p11, std::abs(LK(j, l) - rhs11));
      s11 = std::max(s11, std::abs(rhs11));
      const double rhs12 = 0.5 * (n + 1.0) * (Pcov(l, j).value() - Pcov(j, l).value());
      p12 = std::max(p12, std::abs(LRs(j, l) - rhs12));
      s12 = std::max(s12, std::abs(rhs12));
    }
  }
  r[kProj11] = rel(p11, s11);
  r[kCProj12] = rel(p12, s12);

  if (ps.lr) {
    LocalRanders& lr = *ps.lr;
    r[kKillingAlpha] = lie_residual(L, lr.a());
    const JetTensor LGa = L.lie_spray(lr.spray_alpha());
    const Jet eta = extract_factor(LGa, y);
    double da = 0.0;
    for (int i = 0; i < n; ++i) {
      da = std::max(da, std::abs(LGa(i).value() - eta.value() * y[static_cast<std::size_t>(i)].value()));
    }
    r[kAlphaProjective] = rel(da, max_abs_value(LGa));
    r[kLieAlphaS] = lie_residual(L, alpha_s(lr));
    const Jet q = ps.sq.S() / (n + 1.0) + lr.rho0();
    const double remark = eta.value() + L.apply(q).value();
    r[kFactorRemark] = rel(std::abs(P.value() - remark), std::abs(P.value()));
  }

  if (want_factor) {
    out.factor.P = P.value();
    out.factor.P_i = values(Pi);
    out.factor.P_ij = values(Pij);
    out.factor.P_ij.symmetries = {{0, 1, false}};
    out.factor.P_cov = values(Pcov);
    out.factor.residual = r[kProjective];
  }
  return out;
}

/// Max over sample points of every probe, for every field.
struct SweepResult {
  std::vector<std::array<double, kProbeCount>> max;
  std::vector<ProjectiveFactorData> first_factor;
};

template <class PerPoint>
SweepResult sweep(std::span<const PolyVectorField> fields, const MetricModel& m,
                  std::span<const SamplePoint> samples, int order, PerPoint&& per_point) {
  SweepResult out;
  out.max.assign(fields.size(), {});
  out.first_factor.resize(fields.size());
  for (std::size_t p = 0; p < samples.size(); ++p) {
    auto ps = std::make_unique<PointState>(m, samples[p], order);
    for (std::size_t f = 0; f < fields.size(); ++f) {
      if (fields[f].dim() != m.dim()) throw Error(ErrorCode::InvalidSpec, "field dimension does not match metric");
      ProbeResult res = probe(*ps, fields[f], p == 0);
      for (std::size_t k = 0; k < kProbeCount; ++k) out.max[f][k] = std::max(out.max[f][k], res.r[k]);
      if (p == 0) out.first_factor[f] = std::move(res.factor);
      per_point(*ps, f);
    }
  }
  return out;
}

std::string field_label(const PolyVectorField& V, std::size_t index) {
  return V.name().empty() ? "field" + std::to_string(index) : V.name();
}

}  // namespace

TensorValue lie_spray(const PolyVectorField& V, const MetricModel& m, const SamplePoint& at) {
  LocalGeometry geo(m, at, 3);
  const CompleteLift L(V, geo.x(), geo.y());
  return values(L.lie_spray(geo.spray()));
}

FactorEstimate extract_factor(std::span<const double> LG, std::span<const double> y, bool demand,
                              double tol) {
  if (LG.size() != y.size()) throw Error(ErrorCode::InvalidSpec, "dimension mismatch");
  double dot = 0.0, yy = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    dot += LG[i] * y[i];
    yy += y[i] * y[i];
    scale = std::max(scale, std::abs(LG[i]));
  }
  if (!(yy > 0.0)) throw Error(ErrorCode::DomainError, "y must be nonzero");
  FactorEstimate out;
  out.P = dot / yy;
  double dev = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) dev = std::max(dev, std::abs(LG[i] - out.P * y[i]));
  out.residual = rel(dev, scale);
  if (demand && out.residual > tol) {
    throw Error(ErrorCode::NotProjective,
                "spray Lie derivative is not proportional to y (residual " + std::to_string(out.residual) + ")");
  }
  return out;
}

Jet extract_factor(const JetTensor& LG, std::span<const Jet> y) {
  Jet dot = LG(0) * y[0];
  Jet yy = y[0] * y[0];
  for (int i = 1; i < LG.dim(); ++i) {
    dot += LG(i) * y[static_cast<std::size_t>(i)];
    yy += y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
  }
  return dot / yy;
}

ProjectiveFactorData factor_data(const PolyVectorField& V, const MetricModel& m, const SamplePoint& at) {
  LocalGeometry geo(m, at, 5);
  const int n = geo.dim();
  const CompleteLift L(V, geo.x(), geo.y());
  const JetTensor LG = L.lie_spray(geo.spray());
  const Jet P = extract_factor(LG, geo.y());
  JetTensor Pi(n, "d");
  for (int i = 0; i < n; ++i) Pi(i) = P.diff(geo.y_var(i));
  ProjectiveFactorData out;
  out.P = P.value();
  out.P_i = values(Pi);
  out.P_ij = values(geo.vertical(Pi));
  out.P_ij.symmetries = {{0, 1, false}};
  out.P_cov = values(geo.cov_deriv(Pi));
  const TensorValue lg = values(LG);
  out.residual = extract_factor(lg.data(), at.y).residual;
  return out;
}

TensorValue lie_tensor(const PolyVectorField& V, const TensorField& T, const SamplePoint& at, int order) {
  const JetContext ctx(at.x, at.y, order);
  const auto vars = ctx.lift_point();
  const std::span<const Jet> x(vars.data(), static_cast<std::size_t>(ctx.dim()));
  const std::span<const Jet> y(vars.data() + ctx.dim(), static_cast<std::size_t>(ctx.dim()));
  const CompleteLift L(V, x, y);
  return values(L.lie(T(x, y)));
}

double ClassificationReport::residual(const std::string& name) const {
  for (const auto& r : residuals) {
    if (r.name == name) return r.residual;
  }
  throw Error(ErrorCode::InvalidSpec, "no residual named " + name);
}

std::vector<ClassificationReport> classify(std::span<const PolyVectorField> fields, const MetricModel& m,
                                           std::span<const SamplePoint> samples, const ClassifyOptions& opt) {
  if (samples.empty()) throw Error(ErrorCode::InvalidSpec, "classification needs sample points");
  const SweepResult sw = sweep(fields, m, samples, opt.order, [](PointState&, std::size_t) {});
  const bool has_alpha = m.randers_structure() != nullptr;
  const double tol = opt.tol;

  std::vector<ClassificationReport> out;
  for (std::size_t f = 0; f < fields.size(); ++f) {
    const auto& r = sw.max[f];
    ClassificationReport rep;
    rep.field = field_label(fields[f], f);
    rep.alpha_available = has_alpha;
    const std::size_t count = has_alpha ? kProbeCount : static_cast<std::size_t>(kKillingAlpha);
    for (std::size_t k = 0; k < count; ++k) rep.residuals.push_back({kProbeNames[k], r[k]});

    auto& fl = rep.flags;
    fl.killing_alpha = has_alpha && r[kKillingAlpha] < tol;
    fl.killing_F = r[kKillingF] < tol;
    fl.affine = r[kAffine] < tol;
    fl.projective = r[kProjective] < tol;
    fl.special = fl.projective && r[kSpecial] < tol;
    fl.h_invariant = fl.projective && r[kHInvariant] < tol;
    const double lo = std::min({r[kClosed], r[kLieSigma], r[kLieXi]});
    const double hi = std::max({r[kClosed], r[kLieSigma], r[kLieXi]});
    fl.c_projective = fl.projective && hi < tol;
    if (fl.projective && has_alpha && lo < tol && hi > opt.guard) {
      std::ostringstream msg;
      msg << rep.field << ": closedness routes disagree (P_i|j " << r[kClosed] << ", L Sigma "
          << r[kLieSigma] << ", L Xi " << r[kLieXi] << ")";
      throw Error(ErrorCode::EquivalenceViolation, msg.str());
    }
    if (fl.projective) rep.factor = sw.first_factor[f];
    out.push_back(std::move(rep));
  }
  return out;
}

ClassificationReport classify(const PolyVectorField& V, const MetricModel& m,
                              std::span<const SamplePoint> samples, const ClassifyOptions& opt) {
  return classify(std::span<const PolyVectorField>(&V, 1), m, samples, opt).front();
}

bool InvarianceReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const InvarianceEntry& e) { return e.pass(); });
}

std::vector<InvarianceReport> invariance_suite(std::span<const PolyVectorField> fields, const MetricModel& m,
                                               std::span<const SamplePoint> samples, double threshold) {
  if (samples.empty()) throw Error(ErrorCode::InvalidSpec, "invariance suite needs sample points");
  const bool has_alpha = m.randers_structure() != nullptr;
  enum { kW, kWt, kWs, kAs, kZ, kCount };
  std::vector<std::array<double, kCount>> acc(fields.size(), std::array<double, kCount>{});

  const SweepResult sw = sweep(fields, m, samples, 9, [&](PointState& ps, std::size_t f) {
    ProjectiveTensors pt(ps.geo);
    const CompleteLift L(fields[f], ps.geo.x(), ps.geo.y());
    auto& a = acc[f];
    a[kW] = std::max(a[kW], lie_residual(L, pt.weyl()));
    a[kWt] = std::max(a[kWt], lie_residual(L, pt.weyl_tilde()));
    a[kWs] = std::max(a[kWs], lie_residual(L, pt.weyl_star()));
    if (ps.lr) a[kAs] = std::max(a[kAs], lie_residual(L, alpha_s(*ps.lr)));
    a[kZ] = std::max(a[kZ], lie_residual(L, z_tensor(ps.sq)));
  });

  std::vector<InvarianceReport> out;
  for (std::size_t f = 0; f < fields.size(); ++f) {
    const auto& r = sw.max[f];
    const std::string label = field_label(fields[f], f);
    if (!(r[kProjective] < threshold)) {
      throw Error(ErrorCode::NotProjective,
                  label + " is not projective (residual " + std::to_string(r[kProjective]) + ")");
    }
    const bool special = r[kSpecial] < threshold;
    const bool c_proj = std::max({r[kClosed], r[kLieSigma], r[kLieXi]}) < threshold;
    InvarianceReport rep;
    rep.field = label;
    rep.entries.push_back({"lie_W", acc[f][kW], threshold, true});
    rep.entries.push_back({"lie_W_tilde", acc[f][kWt], threshold, c_proj});
    rep.entries.push_back({"lie_W_star", acc[f][kWs], threshold, special});
    if (has_alpha) rep.entries.push_back({"lie_alpha_s", acc[f][kAs], threshold, true});
    rep.entries.push_back({"lie_Z", acc[f][kZ], threshold, true});
    out.push_back(std::move(rep));
  }
  return out;
}

InvarianceReport invariance_suite(const PolyVectorField& V, const MetricModel& m,
                                  std::span<const SamplePoint> samples, double threshold) {
  return invariance_suite(std::span<const PolyVectorField>(&V, 1), m, samples, threshold).front();
}

SpecialConditions special_conditions(const PolyVectorField& V, const MetricModel& m,
                                     std::span<const SamplePoint> samples, std::optional<double> c) {
  const RandersStructure* rs = m.randers_structure();
  if (!rs) throw Error(ErrorCode::InvalidSpec, "special conditions need a Randers metric");
  if (samples.empty()) throw Error(ErrorCode::InvalidSpec, "special conditions need sample points");
  const int n = m.dim();
  SpecialConditions out;
  for (std::size_t p = 0; p < samples.size(); ++p) {
    const JetContext ctx(samples[p].x, samples[p].y, 4);
    const auto vars = ctx.lift_point();
    const std::span<const Jet> x(vars.data(), static_cast<std::size_t>(n));
    const std::span<const Jet> y(vars.data() + n, static_cast<std::size_t>(n));
    LocalRanders lr2(*rs, x, y);
    const CompleteLift L(V, x, y);

    const Jet a2 = lr2.alpha() * lr2.alpha();
    Jet cj = ctx.constant(c.value_or(0.0));
    if (!c) {
      cj = lr2.e00() / (2.0 * (a2 - lr2.beta() * lr2.beta()));
      double dy = 0.0;
      for (int k = 0; k < n; ++k) dy = std::max(dy, std::abs(cj.diff(n + k).value()));
      if (dy > 1e-8 * std::max(1.0, std::abs(cj.value()))) {
        throw Error(ErrorCode::IsotropyUnknown,
                    "e00 / 2(alpha^2 - beta^2) depends on y (" + std::to_string(dy) + ")");
      }
    }
    if (p == 0) out.c = cj.value();
    Jet Vc = ctx.constant(0.0);
    if (!c) {
      const auto Vx = V.evaluate(x);
      for (int k = 0; k < n; ++k) Vc += Vx[static_cast<std::size_t>(k)] * cj.diff(k);
    }

    const JetTensor LGa = L.lie_spray(lr2.spray_alpha());
    const Jet coeff = Vc * lr2.beta() + cj * L.apply(lr2.beta()) + L.apply(lr2.s0());
    JetTensor Q(n, "u");
    for (int i = 0; i < n; ++i) Q(i) = LGa(i) - coeff * y[static_cast<std::size_t>(i)];
    const Jet P = extract_factor(Q, y);
    double dev = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i) {
      dev = std::max(dev, std::abs(Q(i).value() - P.value() * y[static_cast<std::size_t>(i)].value()));
      scale = std::max(scale, std::abs(Q(i).value()));
    }
    // P must be a 1-form: linear in y.
    double curv = 0.0;
    for (int j = 0; j < n; ++j) {
      const Jet Pj = P.diff(n + j);
      for (int k = 0; k < n; ++k) curv = std::max(curv, std::abs(Pj.diff(n + k).value()));
    }
    out.residual_i = std::max({out.residual_i, rel(dev, scale), curv});

    const Jet t00 = L.apply(a2);
    const double ii = std::abs(2.0 * Vc.value() * a2.value() + cj.value() * t00.value());
    out.residual_ii = std::max(out.residual_ii, rel(ii, a2.value()));
  }
  return out;
}

}  // namespace finsler

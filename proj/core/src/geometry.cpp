#include "finsler/geometry.hpp"

#include <Eigen/Dense>
#include <string>

#include "finsler/error.hpp"
#include "finsler/jet_linalg.hpp"

namespace finsler {

LocalGeometry::LocalGeometry(const MetricModel& metric, const SamplePoint& at, int order)
    : metric_(&metric), ctx_(at.x, at.y, order), vars_(ctx_.lift_point()) {
  if (metric.dim() != ctx_.dim()) {
    throw Error(ErrorCode::InvalidSpec, "metric dimension does not match point");
  }
}

const Jet& LocalGeometry::F() {
  if (!F_) {
    F_ = metric_->F()(x(), y());
    if (!F_->is_finite()) throw Error(ErrorCode::DomainError, "metric is not finite at point");
  }
  return *F_;
}

const JetTensor& LocalGeometry::fundamental_tensor() {
  if (g_) return *g_;
  const int n = dim();
  const Jet F2 = F() * F();
  std::vector<Jet> dF2(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) dF2[static_cast<std::size_t>(i)] = F2.diff(y_var(i));
  JetTensor g(n, "dd");
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      g(i, j) = 0.5 * dF2[static_cast<std::size_t>(i)].diff(y_var(j));
      g(j, i) = g(i, j);
    }
  }
  g.symmetries = {{0, 1, false}};

  Eigen::MatrixXd gv(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) gv(i, j) = g(i, j).value();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gv, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "fundamental tensor has eigenvalue " + std::to_string(lo));
  }
  if (hi / lo > kMaxConditionNumber) {
    throw Error(ErrorCode::SingularMetric, "fundamental tensor condition number " +
                                               std::to_string(hi / lo));
  }
  g_ = std::move(g);
  return *g_;
}

const JetTensor& LocalGeometry::inverse_fundamental_tensor() {
  if (ginv_) return *ginv_;
  const auto& g = fundamental_tensor();
  const int n = dim();
  auto inv = invert(g.data(), n);
  JetTensor out(n, "uu");
  for (std::size_t k = 0; k < inv.size(); ++k) out[k] = std::move(inv[k]);
  out.symmetries = {{0, 1, false}};
  ginv_ = std::move(out);
  return *ginv_;
}

const JetTensor& LocalGeometry::spray() {
  if (G_) return *G_;
  const int n = dim();
  const auto& ginv = inverse_fundamental_tensor();
  const Jet F2 = F() * F();
  std::vector<Jet> rhs;
  rhs.reserve(static_cast<std::size_t>(n));
  for (int h = 0; h < n; ++h) {
    const Jet dy = F2.diff(y_var(h));
    Jet term = -F2.diff(x_var(h));
    for (int k = 0; k < n; ++k) term += y()[static_cast<std::size_t>(k)] * dy.diff(x_var(k));
    rhs.push_back(std::move(term));
  }
  JetTensor G(n, "u");
  for (int i = 0; i < n; ++i) {
    Jet gi = ginv(i, 0) * rhs[0];
    for (int h = 1; h < n; ++h) gi += ginv(i, h) * rhs[static_cast<std::size_t>(h)];
    G(i) = 0.25 * gi;
  }
  G_ = std::move(G);
  return *G_;
}

const JetTensor& LocalGeometry::connection() {
  if (!Gj_) Gj_ = vertical(spray());
  return *Gj_;
}

const JetTensor& LocalGeometry::berwald() {
  if (!Gjk_) {
    const int n = dim();
    const auto& Gj = connection();
    JetTensor out(n, "udd");
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = j; k < n; ++k) {
          out(i, j, k) = Gj(i, j).diff(y_var(k));
          out(i, k, j) = out(i, j, k);
        }
      }
    }
    out.symmetries = {{1, 2, false}};
    Gjk_ = std::move(out);
  }
  return *Gjk_;
}

std::vector<Jet> LocalGeometry::horizontal(const Jet& f) {
  const int n = dim();
  const auto& Gj = connection();
  std::vector<Jet> dy;
  dy.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) dy.push_back(f.diff(y_var(i)));
  std::vector<Jet> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Jet h = f.diff(x_var(k));
    for (int i = 0; i < n; ++i) h -= Gj(i, k) * dy[static_cast<std::size_t>(i)];
    out.push_back(std::move(h));
  }
  return out;
}

Jet LocalGeometry::horizontal(const Jet& f, int k) {
  const auto& Gj = connection();
  Jet h = f.diff(x_var(k));
  for (int i = 0; i < dim(); ++i) h -= Gj(i, k) * f.diff(y_var(i));
  return h;
}

JetTensor LocalGeometry::cov_deriv(const JetTensor& t) {
  const int n = dim();
  const int rank = t.rank();
  if (rank > 4) {
    throw Error(ErrorCode::UnsupportedVariance, "covariant derivative supports rank <= 4");
  }
  const auto& G = berwald();
  JetTensor out(n, t.variance() + "d");
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    const auto idx = t.unflatten(flat);
    auto h = horizontal(t[flat]);
    for (int k = 0; k < n; ++k) {
      Jet& v = h[static_cast<std::size_t>(k)];
      for (int s = 0; s < rank; ++s) {
        const std::size_t stride = t.stride(s);
        const std::size_t base = flat - static_cast<std::size_t>(idx[static_cast<std::size_t>(s)]) * stride;
        const int a = idx[static_cast<std::size_t>(s)];
        for (int r = 0; r < n; ++r) {
          const Jet& tr = t[base + static_cast<std::size_t>(r) * stride];
          if (t.variance()[static_cast<std::size_t>(s)] == 'u') {
            v += tr * G(a, r, k);
          } else {
            v -= tr * G(r, a, k);
          }
        }
      }
      out[flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] = std::move(v);
    }
  }
  return out;
}

JetTensor LocalGeometry::vertical(const JetTensor& t) {
  const int n = dim();
  JetTensor out(n, t.variance() + "d");
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    for (int k = 0; k < n; ++k) {
      out[flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] = t[flat].diff(y_var(k));
    }
  }
  return out;
}

const JetTensor& LocalGeometry::riemann() {
  if (R_) return *R_;
  const int n = dim();
  const auto& G = spray();
  const auto& Gj = connection();
  const auto& Gjk = berwald();
  JetTensor R(n, "ud");
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      Jet r = 2.0 * G(i).diff(x_var(k));
      for (int j = 0; j < n; ++j) {
        r -= y()[static_cast<std::size_t>(j)] * Gj(i, k).diff(x_var(j));
        r += 2.0 * (G(j) * Gjk(i, j, k));
        r -= Gj(i, j) * Gj(j, k);
      }
      R(i, k) = std::move(r);
    }
  }
  R_ = std::move(R);
  return *R_;
}

const JetTensor& LocalGeometry::berwald_riemann() {
  if (K4_) return *K4_;
  const int n = dim();
  const auto& R = riemann();
  // dR(i,k,l) = R^i_k.l
  const JetTensor dR = vertical(R);
  JetTensor K(n, "uddd");
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        const Jet diff_kl = dR(i, k, l) - dR(i, l, k);
        for (int j = 0; j < n; ++j) K(i, j, k, l) = diff_kl.diff(y_var(j)) / 3.0;
      }
    }
  }
  K.symmetries = {{2, 3, true}};
  K4_ = std::move(K);
  return *K4_;
}

const JetTensor& LocalGeometry::ricci_tensor() {
  if (K2_) return *K2_;
  const int n = dim();
  const auto& K = berwald_riemann();
  JetTensor out(n, "dd");
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      Jet s = K(0, j, 0, l);
      for (int i = 1; i < n; ++i) s += K(i, j, i, l);
      out(j, l) = std::move(s);
    }
  }
  K2_ = std::move(out);
  return *K2_;
}

Jet LocalGeometry::ricci_scalar() {
  const auto& R = riemann();
  Jet s = R(0, 0);
  for (int m = 1; m < dim(); ++m) s += R(m, m);
  return s;
}

JetTensor LocalGeometry::ricci_skew() {
  const int n = dim();
  const auto& K = ricci_tensor();
  JetTensor out(n, "dd");
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) out(j, l) = 0.5 * (K(j, l) - K(l, j));
  }
  out.symmetries = {{0, 1, true}};
  return out;
}

TensorValue fundamental_tensor(const MetricModel& m, const SamplePoint& at) {
  LocalGeometry geo(m, at, 2);
  return values(geo.fundamental_tensor());
}

TensorValue spray(const MetricModel& m, const SamplePoint& at) {
  LocalGeometry geo(m, at, 2);
  return values(geo.spray());
}

BerwaldCoefficients berwald(const MetricModel& m, const SamplePoint& at) {
  LocalGeometry geo(m, at, 4);
  return {values(geo.connection()), values(geo.berwald())};
}

double horizontal(const ScalarField& f, const MetricModel& m, const SamplePoint& at, int k) {
  LocalGeometry geo(m, at, 3);
  return geo.horizontal(f(geo.x(), geo.y()), k).value();
}

TensorValue cov_deriv(const TensorField& t, const MetricModel& m, const SamplePoint& at) {
  LocalGeometry geo(m, at, 4);
  return values(geo.cov_deriv(t(geo.x(), geo.y())));
}

TensorValue riemann(const MetricModel& m, const SamplePoint& at) {
  LocalGeometry geo(m, at, 4);
  return values(geo.riemann());
}

TensorValue berwald_riemann(const MetricModel& m, const SamplePoint& at) {
  LocalGeometry geo(m, at, 6);
  return values(geo.berwald_riemann());
}

CurvatureBundle curvature(const MetricModel& m, const SamplePoint& at) {
  LocalGeometry geo(m, at, 6);
  CurvatureBundle out;
  out.R = values(geo.riemann());
  out.K4 = values(geo.berwald_riemann());
  out.ric = geo.ricci_scalar().value();
  out.K2 = values(geo.ricci_tensor());
  out.Rskew = values(geo.ricci_skew());
  return out;
}

}  // namespace finsler

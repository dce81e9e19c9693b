#include "finsler/invariants.hpp"

#include "finsler/error.hpp"

namespace finsler {

ProjectiveTensors::ProjectiveTensors(LocalGeometry& geo) : geo_(&geo) {}

const JetTensor& ProjectiveTensors::douglas() {
  if (D_) return *D_;
  const int n = geo_->dim();
  const auto& G = geo_->spray();
  const auto& Gj = geo_->connection();
  Jet trace = Gj(0, 0);
  for (int m = 1; m < n; ++m) trace += Gj(m, m);
  JetTensor D(n, "uddd");
  for (int i = 0; i < n; ++i) {
    const Jet base = G(i) - trace * geo_->y()[static_cast<std::size_t>(i)] / (n + 1.0);
    for (int j = 0; j < n; ++j) {
      const Jet dj = base.diff(geo_->y_var(j));
      for (int k = j; k < n; ++k) {
        const Jet djk = dj.diff(geo_->y_var(k));
        for (int l = k; l < n; ++l) {
          const Jet v = djk.diff(geo_->y_var(l));
          D(i, j, k, l) = v;
          D(i, j, l, k) = v;
          D(i, k, j, l) = v;
          D(i, k, l, j) = v;
          D(i, l, j, k) = v;
          D(i, l, k, j) = v;
        }
      }
    }
  }
  D.symmetries = {{1, 2, false}, {2, 3, false}, {1, 3, false}};
  D_ = std::move(D);
  return *D_;
}

const JetTensor& ProjectiveTensors::ricci_vertical() {
  if (!dK_) dK_ = geo_->vertical(geo_->ricci_tensor());
  return *dK_;
}

const JetTensor& ProjectiveTensors::ricci_hat() {
  if (Kh_) return *Kh_;
  const int n = geo_->dim();
  const auto& K = geo_->ricci_tensor();
  const auto& dK = ricci_vertical();
  const auto y = geo_->y();
  JetTensor Kh(n, "dd");
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Jet v = static_cast<double>(n) * K(j, k) + K(k, j);
      for (int r = 0; r < n; ++r) v += y[static_cast<std::size_t>(r)] * dK(k, r, j);
      Kh(j, k) = std::move(v);
    }
  }
  Kh_ = std::move(Kh);
  return *Kh_;
}

const JetTensor& ProjectiveTensors::weyl() {
  if (W_) return *W_;
  const int n = geo_->dim();
  if (n < 2) throw Error(ErrorCode::InvalidSpec, "Weyl-type tensors need n >= 2");
  const auto& K4 = geo_->berwald_riemann();
  const auto& Kh = ricci_hat();
  const auto y = geo_->y();
  const double c = 1.0 / (n * n - 1.0);
  JetTensor skew(n, "dd");
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) skew(k, l) = Kh(k, l) - Kh(l, k);
  }
  const JetTensor dskew = geo_->vertical(skew);  // (k, l, j)
  JetTensor W(n, "uddd");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Jet bracket = y[static_cast<std::size_t>(i)] * dskew(k, l, j);
          if (i == j) bracket += skew(k, l);
          if (i == k) bracket += Kh(j, l);
          if (i == l) bracket -= Kh(j, k);
          W(i, j, k, l) = K4(i, j, k, l) - c * bracket;
        }
      }
    }
  }
  W.symmetries = {{2, 3, true}};
  W_ = std::move(W);
  return *W_;
}

const JetTensor& ProjectiveTensors::weyl_tilde() {
  if (Wt_) return *Wt_;
  const int n = geo_->dim();
  if (n < 2) throw Error(ErrorCode::InvalidSpec, "Weyl-type tensors need n >= 2");
  const auto& K4 = geo_->berwald_riemann();
  const auto& Kh = ricci_hat();
  const auto& dK = ricci_vertical();
  const auto y = geo_->y();
  const double c = 1.0 / (1.0 - n * n);
  const double w = n / (n + 1.0);
  // T_jk = Kh_jk + n/(n+1) y^r (K_jr.k - K_jk.r)
  JetTensor T(n, "dd");
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Jet s = y[0] * (dK(j, 0, k) - dK(j, k, 0));
      for (int r = 1; r < n; ++r) s += y[static_cast<std::size_t>(r)] * (dK(j, r, k) - dK(j, k, r));
      T(j, k) = Kh(j, k) + w * s;
    }
  }
  JetTensor Wt(n, "uddd");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Jet v = K4(i, j, k, l);
          if (i == l) v -= c * T(j, k);
          if (i == k) v += c * T(j, l);
          Wt(i, j, k, l) = std::move(v);
        }
      }
    }
  }
  Wt_ = std::move(Wt);
  return *Wt_;
}

const JetTensor& ProjectiveTensors::weyl_star() {
  if (Ws_) return *Ws_;
  const int n = geo_->dim();
  if (n < 2) throw Error(ErrorCode::InvalidSpec, "Weyl-type tensors need n >= 2");
  const auto& K4 = geo_->berwald_riemann();
  const auto& K = geo_->ricci_tensor();
  const double c = 1.0 / (n * n - 1.0);
  JetTensor Ws(n, "uddd");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Jet v = K4(i, j, k, l);
          if (i == k) v -= c * (static_cast<double>(n) * K(j, l) + K(l, j));
          if (i == l) v += c * (static_cast<double>(n) * K(j, k) + K(k, j));
          if (i == j) v -= c * (n - 1.0) * (K(k, l) - K(l, k));
          Ws(i, j, k, l) = std::move(v);
        }
      }
    }
  }
  Ws.symmetries = {{2, 3, true}};
  Ws_ = std::move(Ws);
  return *Ws_;
}

JetTensor z_tensor(SCurvatureField& sq) {
  LocalGeometry& geo = sq.geometry();
  const int n = geo.dim();
  const JetTensor skew = geo.ricci_skew();
  const auto& sigma = sq.sigma();
  JetTensor Z(n, "dd");
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) Z(j, l) = skew(j, l) - 0.5 * (n + 1.0) * sigma(j, l);
  }
  Z.symmetries = {{0, 1, true}};
  return Z;
}

JetTensor alpha_s(LocalRanders& r) {
  const int n = r.dim();
  const auto& su = r.s_up();
  const Jet& a = r.alpha();
  JetTensor out(n, "ud");
  for (std::size_t k = 0; k < su.size(); ++k) out[k] = a * su[k];
  return out;
}

InvariantTensors invariant_tensors(const MetricModel& m, const SamplePoint& at) {
  LocalGeometry geo(m, at, 8);
  ProjectiveTensors pt(geo);
  SCurvatureField sq(geo, default_volume(m));
  InvariantTensors out;
  out.D = values(pt.douglas());
  out.W = values(pt.weyl());
  out.W_tilde = values(pt.weyl_tilde());
  out.W_star = values(pt.weyl_star());
  out.Z = values(z_tensor(sq));
  if (const RandersStructure* rs = m.randers_structure()) {
    LocalRanders lr(*rs, geo.x(), geo.y());
    out.alpha_s = values(alpha_s(lr));
  }
  return out;
}

}  // namespace finsler

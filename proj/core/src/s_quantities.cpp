#include "finsler/s_quantities.hpp"

#include <algorithm>
#include <cmath>

namespace finsler {

VolumeForm default_volume(const MetricModel& m) {
  if (m.randers_structure()) return VolumeForm::busemann_hausdorff(m);
  return VolumeForm::coordinate(m.dim());
}

SCurvatureField::SCurvatureField(LocalGeometry& geo, VolumeForm vol) : geo_(&geo), vol_(std::move(vol)) {}

const Jet& SCurvatureField::S() {
  if (!S_) S_ = s_curvature(*geo_, vol_);
  return *S_;
}

const JetTensor& SCurvatureField::S_dot() {
  if (!Sd_) {
    const int n = geo_->dim();
    JetTensor t(n, "d");
    for (int i = 0; i < n; ++i) t(i) = S().diff(geo_->y_var(i));
    Sd_ = std::move(t);
  }
  return *Sd_;
}

const JetTensor& SCurvatureField::S_dot_cov() {
  if (!Sdc_) Sdc_ = geo_->cov_deriv(S_dot());
  return *Sdc_;
}

const JetTensor& SCurvatureField::xi() {
  if (xi_) return *xi_;
  const int n = geo_->dim();
  const auto& Sdc = S_dot_cov();
  const auto dS = geo_->horizontal(S());
  JetTensor t(n, "d");
  for (int i = 0; i < n; ++i) {
    Jet v = -dS[static_cast<std::size_t>(i)];
    for (int m = 0; m < n; ++m) v += geo_->y()[static_cast<std::size_t>(m)] * Sdc(i, m);
    t(i) = std::move(v);
  }
  xi_ = std::move(t);
  return *xi_;
}

const JetTensor& SCurvatureField::e() {
  if (e_) return *e_;
  const int n = geo_->dim();
  const auto& Sd = S_dot();
  JetTensor t(n, "dd");
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      t(i, j) = 0.5 * Sd(i).diff(geo_->y_var(j));
      t(j, i) = t(i, j);
    }
  }
  t.symmetries = {{0, 1, false}};
  e_ = std::move(t);
  return *e_;
}

const JetTensor& SCurvatureField::h() {
  if (h_) return *h_;
  const int n = geo_->dim();
  const JetTensor de = geo_->cov_deriv(e());
  JetTensor t(n, "dd");
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Jet v = geo_->y()[0] * de(i, j, 0);
      for (int m = 1; m < n; ++m) v += geo_->y()[static_cast<std::size_t>(m)] * de(i, j, m);
      t(i, j) = std::move(v);
      t(j, i) = t(i, j);
    }
  }
  t.symmetries = {{0, 1, false}};
  h_ = std::move(t);
  return *h_;
}

const JetTensor& SCurvatureField::sigma() {
  if (sigma_) return *sigma_;
  const int n = geo_->dim();
  const auto& Sdc = S_dot_cov();
  JetTensor t(n, "dd");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t(i, j) = (Sdc(i, j) - Sdc(j, i)) / (n + 1.0);
  }
  t.symmetries = {{0, 1, true}};
  sigma_ = std::move(t);
  return *sigma_;
}

SQuantities s_quantities(const MetricModel& m, const SamplePoint& at, const VolumeForm& vol) {
  LocalGeometry geo(m, at, 6);
  SCurvatureField sq(geo, vol);
  return {sq.S().value(), values(sq.xi()), values(sq.e()), values(sq.h()), values(sq.sigma())};
}

TensorValue xi(const MetricModel& m, const SamplePoint& at, const VolumeForm& vol) {
  LocalGeometry geo(m, at, 5);
  SCurvatureField sq(geo, vol);
  return values(sq.xi());
}

TensorValue e_tensor(const MetricModel& m, const SamplePoint& at, const VolumeForm& vol) {
  LocalGeometry geo(m, at, 5);
  SCurvatureField sq(geo, vol);
  return values(sq.e());
}

TensorValue h_tensor(const MetricModel& m, const SamplePoint& at, const VolumeForm& vol) {
  LocalGeometry geo(m, at, 6);
  SCurvatureField sq(geo, vol);
  return values(sq.h());
}

TensorValue sigma_tensor(const MetricModel& m, const SamplePoint& at, const VolumeForm& vol) {
  LocalGeometry geo(m, at, 5);
  SCurvatureField sq(geo, vol);
  return values(sq.sigma());
}

double RelationReport::max() const {
  double r = 0.0;
  for (const auto& e : entries) r = std::max(r, e.residual);
  return r;
}

namespace {

// Accumulates max |residual| / max(1, max |term|) for one relation.
class Residual {
 public:
  void add(double residual, std::initializer_list<double> terms) {
    res_ = std::max(res_, std::abs(residual));
    for (double t : terms) scale_ = std::max(scale_, std::abs(t));
  }
  double value() const { return res_ / scale_; }

 private:
  double res_ = 0.0;
  double scale_ = 1.0;
};

}  // namespace

RelationReport relations_check(SCurvatureField& sq) {
  LocalGeometry& geo = sq.geometry();
  const int n = geo.dim();
  const double np1 = n + 1.0;
  const TensorValue X = values(sq.xi());
  const TensorValue H = values(sq.h());
  const TensorValue Sg = values(sq.sigma());
  const TensorValue dX = values(geo.vertical(sq.xi()));      // Xi_i.j
  const TensorValue dSg = values(geo.vertical(sq.sigma()));  // Sigma_ij.k
  const auto& y = geo.context().y();

  Residual r00, r01, r02, r1, r2, r3, r4, r5;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      r00.add(Sg(i, j) + Sg(j, i), {Sg(i, j)});
      r1.add(dX(i, j) + dX(j, i) - 4.0 * H(i, j), {dX(i, j), dX(j, i), 4.0 * H(i, j)});
      r2.add(dX(i, j) - dX(j, i) - 2.0 * np1 * Sg(i, j), {dX(i, j), dX(j, i), 2.0 * np1 * Sg(i, j)});
      r4.add(dX(i, j) - 2.0 * H(i, j) - np1 * Sg(i, j), {dX(i, j), 2.0 * H(i, j), np1 * Sg(i, j)});
    }
  }
  for (int j = 0; j < n; ++j) {
    double ys = 0.0, yx = 0.0;
    for (int i = 0; i < n; ++i) {
      ys += y[static_cast<std::size_t>(i)] * Sg(i, j);
      yx += y[static_cast<std::size_t>(i)] * dX(i, j);
    }
    r01.add(ys + X(j) / np1, {ys, X(j) / np1});
    r02.add(yx + X(j), {yx, X(j)});
    r5.add(np1 * ys + X(j), {np1 * ys, X(j)});
    for (int k = 0; k < n; ++k) {
      double yds = 0.0;
      for (int i = 0; i < n; ++i) yds += y[static_cast<std::size_t>(i)] * dSg(i, j, k);
      r3.add(yds + 2.0 / np1 * H(j, k), {yds, 2.0 / np1 * H(j, k)});
    }
  }
  return {{{"R00", r00.value()},
           {"R01", r01.value()},
           {"R02", r02.value()},
           {"R1", r1.value()},
           {"R2", r2.value()},
           {"R3", r3.value()},
           {"R4", r4.value()},
           {"R5", r5.value()}}};
}

RelationReport relations_check(const MetricModel& m, const SamplePoint& at, const VolumeForm& vol) {
  LocalGeometry geo(m, at, 6);
  SCurvatureField sq(geo, vol);
  return relations_check(sq);
}

}  // namespace finsler

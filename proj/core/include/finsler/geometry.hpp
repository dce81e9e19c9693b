#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "finsler/jet.hpp"
#include "finsler/metric.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

/// Condition-number ceiling for the fundamental tensor.
inline constexpr double kMaxConditionNumber = 1e12;

/// A tensor field on the pullback bundle, evaluated through jets.
using TensorField = std::function<JetTensor(std::span<const Jet> x, std::span<const Jet> y)>;

/// Jet-level Berwald geometry of a metric around one point of TM_0.
///
/// Every quantity is a jet (or a tensor of jets) expanded around the base
/// point, so further x- and y-derivatives are exact. Quantities are computed
/// on first use and cached; an instance is meant to be owned by one thread.
///
/// Order bookkeeping for a context of order K: g and G^i have order K-2,
/// G^i_j K-3, G^i_jk and R^i_k K-4, K^i_jkl and K_jl K-6.
class LocalGeometry {
 public:
  LocalGeometry(const MetricModel& metric, const SamplePoint& at, int order = kDefaultOrder);

  const MetricModel& metric() const noexcept { return *metric_; }
  const JetContext& context() const noexcept { return ctx_; }
  int dim() const noexcept { return ctx_.dim(); }
  std::span<const Jet> x() const noexcept { return {vars_.data(), static_cast<std::size_t>(dim())}; }
  std::span<const Jet> y() const noexcept {
    return {vars_.data() + dim(), static_cast<std::size_t>(dim())};
  }
  int x_var(int i) const noexcept { return i; }
  int y_var(int i) const noexcept { return dim() + i; }

  const Jet& F();
  /// g_ij = 1/2 [F^2]_{y^i y^j}; throws NotPositiveDefinite / SingularMetric.
  const JetTensor& fundamental_tensor();
  const JetTensor& inverse_fundamental_tensor();
  /// G^i = 1/4 g^{ih} (y^k [F^2]_{x^k y^h} - [F^2]_{x^h}).
  const JetTensor& spray();
  /// G^i_j = dG^i/dy^j.
  const JetTensor& connection();
  /// G^i_jk = d^2 G^i / dy^j dy^k.
  const JetTensor& berwald();

  /// delta f / delta x^k = df/dx^k - G^i_k df/dy^i for every k.
  std::vector<Jet> horizontal(const Jet& f);
  Jet horizontal(const Jet& f, int k);
  /// Berwald horizontal covariant derivative; appends one lower index.
  JetTensor cov_deriv(const JetTensor& t);
  /// Vertical derivative of every component; appends one lower index.
  JetTensor vertical(const JetTensor& t);

  /// R^i_k = 2 dG^i/dx^k - y^j d^2G^i/dx^j dy^k + 2 G^j G^i_jk - G^i_j G^j_k.
  const JetTensor& riemann();
  /// K^i_jkl = 1/3 (R^i_k.l.j - R^i_l.k.j).
  const JetTensor& berwald_riemann();
  /// K_jl = K^i_jil.
  const JetTensor& ricci_tensor();
  /// Ric = R^m_m.
  Jet ricci_scalar();
  /// (K_jl - K_lj) / 2.
  JetTensor ricci_skew();

  Jet constant(double v) const { return ctx_.constant(v); }

 private:
  const MetricModel* metric_;
  JetContext ctx_;
  std::vector<Jet> vars_;

  std::optional<Jet> F_;
  std::optional<JetTensor> g_, ginv_, G_, Gj_, Gjk_, R_, K4_, K2_;
};

/// Point-evaluated curvature stack.
struct CurvatureBundle {
  TensorValue R;      // R^i_k
  TensorValue K4;     // K^i_jkl
  double ric = 0.0;   // trace of R
  TensorValue K2;     // K_jl
  TensorValue Rskew;  // (K_jl - K_lj)/2
};

struct BerwaldCoefficients {
  TensorValue connection;    // G^i_j
  TensorValue coefficients;  // G^i_jk
};

TensorValue fundamental_tensor(const MetricModel& m, const SamplePoint& at);
TensorValue spray(const MetricModel& m, const SamplePoint& at);
BerwaldCoefficients berwald(const MetricModel& m, const SamplePoint& at);
double horizontal(const ScalarField& f, const MetricModel& m, const SamplePoint& at, int k);
TensorValue cov_deriv(const TensorField& t, const MetricModel& m, const SamplePoint& at);
TensorValue riemann(const MetricModel& m, const SamplePoint& at);
TensorValue berwald_riemann(const MetricModel& m, const SamplePoint& at);
CurvatureBundle curvature(const MetricModel& m, const SamplePoint& at);

}  // namespace finsler

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finsler/geometry.hpp"
#include "finsler/jet.hpp"
#include "finsler/metric.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

/// Analytic Randers quantities around one point, as jets.
///
/// Notation: Gamma is the Levi-Civita connection of alpha, nabla_b(i, j) is
/// the covariant derivative of b_i in direction x^j, and
///   r_ij = (nabla_j b_i + nabla_i b_j)/2,  s_ij = (nabla_j b_i - nabla_i b_j)/2,
///   s^i_j = a^{ih} s_hj,  s_j = b_i s^i_j,  e_ij = r_ij + b_i s_j + b_j s_i,
///   rho = ln sqrt(1 - |beta|^2_alpha),  rho_0 = y^i drho/dx^i.
class LocalRanders {
 public:
  /// Shares the jet variables of an existing expansion (e.g. a LocalGeometry).
  LocalRanders(const RandersStructure& s, std::span<const Jet> x, std::span<const Jet> y);
  LocalRanders(const RandersStructure& s, const SamplePoint& at, int order = kDefaultOrder);

  int dim() const noexcept { return n_; }

  const JetTensor& a();
  const JetTensor& a_inv();
  /// Gamma^i_jk, symmetric in (j, k).
  const JetTensor& christoffel();
  /// G_alpha^i = 1/2 Gamma^i_jk y^j y^k.
  const JetTensor& spray_alpha();
  const JetTensor& b();
  const JetTensor& nabla_b();
  const JetTensor& r();
  const JetTensor& s();
  const JetTensor& s_up();
  const JetTensor& s_vec();
  const JetTensor& e();
  /// s^i_0 = s^i_j y^j.
  const JetTensor& s0_up();
  const Jet& alpha();
  const Jet& beta();
  const Jet& F();
  const Jet& e00();
  const Jet& s0();
  /// |beta|^2_alpha = a^{ij} b_i b_j; throws RandersConditionViolated if >= 1.
  const Jet& beta_norm_sq();
  const Jet& rho();
  const Jet& rho0();
  /// G^i = G_alpha^i + (e00/(2F) - s0) y^i + alpha s^i_0.
  const JetTensor& spray();
  /// S = (n+1) (e00/(2F) - s0 - rho0).
  Jet s_curvature();
  /// Busemann-Hausdorff density sqrt(det a) (1 - |beta|^2)^((n+1)/2).
  Jet bh_density();
  /// alpha-covariant derivative of a_ij (zero up to rounding).
  JetTensor metric_compatibility();

 private:
  std::span<const Jet> x() const { return {x_.data(), x_.size()}; }
  std::span<const Jet> y() const { return {y_.data(), y_.size()}; }

  const RandersStructure* structure_;
  int n_;
  std::vector<Jet> x_;
  std::vector<Jet> y_;
  std::optional<JetTensor> a_, ainv_, gamma_, Ga_, b_, nb_, r_, s_, sup_, svec_, e_, s0up_, G_;
  std::optional<Jet> alpha_, beta_, F_, e00_, s0_, bb_, rho_, rho0_;
};

struct LeviCivita {
  TensorValue gamma;        // Gamma^i_jk
  TensorValue spray_alpha;  // G_alpha^i at (x, y)
};

struct RandersData {
  TensorValue r, s, s_up, s_vec, e;
  double rho = 0.0;
  double e00 = 0.0;
  double s0 = 0.0;
  double rho0 = 0.0;
};

LeviCivita levi_civita(const RiemannianSpec& a, const SamplePoint& at);
RandersData randers_data(const RandersStructure& s, const SamplePoint& at);
TensorValue spray_randers(const RandersStructure& s, const SamplePoint& at);

enum class VolumeKind { busemann_hausdorff, coordinate, custom };

/// Volume form sigma(x) dx^1...dx^n with sigma evaluated through jets.
struct VolumeForm {
  VolumeKind kind = VolumeKind::coordinate;
  std::string name;
  std::function<Jet(std::span<const Jet> x)> sigma;

  double density(std::span<const double> x) const;

  /// Closed-form Busemann-Hausdorff density; needs a Randers split.
  static VolumeForm busemann_hausdorff(const MetricModel& m);
  static VolumeForm coordinate(int n);
  static VolumeForm custom(std::string name, std::function<Jet(std::span<const Jet> x)> sigma);
};

enum class VolumeMethod { closed_form_randers, indicatrix_integration };

/// Busemann-Hausdorff density at x. The integration path averages t(u)^n over
/// the unit sphere, where t(u) solves F(x, t u) = 1.
double bh_volume(const MetricModel& m, std::span<const double> x, VolumeMethod method);

/// S = G^m_m - y^m d(ln sigma)/dx^m, as a jet of order K-3.
Jet s_curvature(LocalGeometry& geo, const VolumeForm& vol);
double s_curvature(const MetricModel& m, const SamplePoint& at, const VolumeForm& vol);
/// Closed-form Randers S-curvature with respect to the Busemann-Hausdorff volume.
double s_curvature_randers(const RandersStructure& s, const SamplePoint& at);

}  // namespace finsler

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finsler/geometry.hpp"
#include "finsler/metric.hpp"
#include "finsler/tensor.hpp"
#include "finsler/vector_field.hpp"

namespace finsler {

/// Classification tolerance (relative, scale floor 1).
inline constexpr double kProjectiveTol = 1e-6;
/// Disagreement between the closedness routes beyond this is an engine fault.
inline constexpr double kEquivalenceGuard = 1e-5;

/// L_V^ G^i at one point.
TensorValue lie_spray(const PolyVectorField& V, const MetricModel& m, const SamplePoint& at);

struct FactorEstimate {
  double P = 0.0;
  /// max_i |LG^i - P y^i| / max(1, max_i |LG^i|)
  double residual = 0.0;
};

/// Euclidean projection of LG onto y. With `demand` set, a residual above
/// `tol` raises NotProjective.
FactorEstimate extract_factor(std::span<const double> LG, std::span<const double> y,
                              bool demand = false, double tol = kProjectiveTol);
/// Same projection carried out on jets: P = (LG . y) / |y|^2.
Jet extract_factor(const JetTensor& LG, std::span<const Jet> y);

struct ProjectiveFactorData {
  double P = 0.0;
  TensorValue P_i;    // P_.i
  TensorValue P_ij;   // P_i.j
  TensorValue P_cov;  // P_i|j
  double residual = 0.0;
};

ProjectiveFactorData factor_data(const PolyVectorField& V, const MetricModel& m, const SamplePoint& at);

/// Lie derivative of a tensor field on the pullback bundle at one point.
TensorValue lie_tensor(const PolyVectorField& V, const TensorField& T, const SamplePoint& at,
                       int order = 3);

struct ClassificationFlags {
  bool killing_alpha = false;
  bool killing_F = false;
  bool affine = false;
  bool projective = false;
  bool special = false;
  bool c_projective = false;
  bool h_invariant = false;
};

struct NamedResidual {
  std::string name;
  double residual = 0.0;
};

struct ClassificationReport {
  std::string field;
  ClassificationFlags flags;
  /// False for metrics without an alpha (killing_alpha is then reported false).
  bool alpha_available = false;
  /// Max over sample points, scale-aware. Always contains:
  ///   killing_F, affine, projective, special, closed (P_i|j - P_j|i),
  ///   lie_sigma, lie_xi, h_invariant, proj3, proj11, c_proj12;
  /// with an alpha also killing_alpha, alpha_projective, lie_alpha_s, factor_remark.
  std::vector<NamedResidual> residuals;
  /// Factor data at the first sample point when projective.
  std::optional<ProjectiveFactorData> factor;

  double residual(const std::string& name) const;
};

struct ClassifyOptions {
  double tol = kProjectiveTol;
  double guard = kEquivalenceGuard;
  int order = 7;
};

/// Classifies every field against the metric over the given sample points.
/// Throws EquivalenceViolation when, for a projective field on a metric with a
/// Randers split, one closedness route passes while another exceeds the guard.
std::vector<ClassificationReport> classify(std::span<const PolyVectorField> fields,
                                           const MetricModel& m, std::span<const SamplePoint> samples,
                                           const ClassifyOptions& opt = {});
ClassificationReport classify(const PolyVectorField& V, const MetricModel& m,
                              std::span<const SamplePoint> samples, const ClassifyOptions& opt = {});

struct InvarianceEntry {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  /// Whether the field belongs to the class the tensor is invariant under.
  bool applicable = true;
  bool pass() const { return !applicable || residual < threshold; }
};

struct InvarianceReport {
  std::string field;
  /// lie_W, lie_W_tilde, lie_W_star, lie_alpha_s (Randers only), lie_Z.
  std::vector<InvarianceEntry> entries;
  bool pass() const;
};

/// Residuals of the Lie derivatives of W, W~, W*, alpha s and Z. Throws
/// NotProjective if some field is not projective at the samples.
std::vector<InvarianceReport> invariance_suite(std::span<const PolyVectorField> fields,
                                               const MetricModel& m,
                                               std::span<const SamplePoint> samples,
                                               double threshold = kProjectiveTol);
InvarianceReport invariance_suite(const PolyVectorField& V, const MetricModel& m,
                                  std::span<const SamplePoint> samples,
                                  double threshold = kProjectiveTol);

struct SpecialConditions {
  /// L G_alpha - ((V.c) beta + c L beta + L s_0 + P) y with P a 1-form.
  double residual_i = 0.0;
  /// 2 (V.c) alpha^2 + c t_00 with t_ij = L a_ij.
  double residual_ii = 0.0;
  /// c(x) at the first sample point.
  double c = 0.0;
};

/// Conditions characterizing special projective fields on a Randers metric of
/// isotropic S-curvature S = (n+1) c(x) F. Without `c`, c(x) is recovered from
/// e_00 = 2c(alpha^2 - beta^2) and IsotropyUnknown is raised if it depends on y.
SpecialConditions special_conditions(const PolyVectorField& V, const MetricModel& m,
                                     std::span<const SamplePoint> samples,
                                     std::optional<double> c = std::nullopt);

}  // namespace finsler

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finsler/geometry.hpp"
#include "finsler/randers.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

/// Busemann-Hausdorff for metrics with a Randers split, coordinate volume otherwise.
VolumeForm default_volume(const MetricModel& m);

/// S-curvature and the quantities built from it, as jets over one LocalGeometry.
///
///   Xi_i    = y^m S_.i|m - S_|i            (order K-5)
///   E_ij    = 1/2 S_.i.j                   (order K-5)
///   H_ij    = 1/2 y^m S_.i.j|m             (order K-6)
///   Sigma_ij = (S_.i|j - S_.j|i) / (n+1)   (order K-5)
class SCurvatureField {
 public:
  SCurvatureField(LocalGeometry& geo, VolumeForm vol);

  LocalGeometry& geometry() noexcept { return *geo_; }
  const VolumeForm& volume() const noexcept { return vol_; }

  const Jet& S();
  /// S_.i
  const JetTensor& S_dot();
  /// S_.i|j
  const JetTensor& S_dot_cov();
  const JetTensor& xi();
  const JetTensor& e();
  const JetTensor& h();
  const JetTensor& sigma();

 private:
  LocalGeometry* geo_;
  VolumeForm vol_;
  std::optional<Jet> S_;
  std::optional<JetTensor> Sd_, Sdc_, xi_, e_, h_, sigma_;
};

struct SQuantities {
  double S = 0.0;
  TensorValue xi;     // Xi_i
  TensorValue e;      // E_ij
  TensorValue h;      // H_ij
  TensorValue sigma;  // Sigma_ij
};

SQuantities s_quantities(const MetricModel& m, const SamplePoint& at, const VolumeForm& vol);
TensorValue xi(const MetricModel& m, const SamplePoint& at, const VolumeForm& vol);
TensorValue e_tensor(const MetricModel& m, const SamplePoint& at, const VolumeForm& vol);
TensorValue h_tensor(const MetricModel& m, const SamplePoint& at, const VolumeForm& vol);
TensorValue sigma_tensor(const MetricModel& m, const SamplePoint& at, const VolumeForm& vol);

struct RelationResidual {
  std::string name;
  double residual = 0.0;
};

/// Scale-aware residuals of the identities linking Xi, H and Sigma:
///   R00  Sigma_ij + Sigma_ji = 0
///   R01  y^i Sigma_ij + Xi_j/(n+1) = 0
///   R02  y^j Xi_j.k + Xi_k = 0
///   R1   Xi_i.j + Xi_j.i - 4 H_ij = 0
///   R2   Xi_i.j - Xi_j.i - 2(n+1) Sigma_ij = 0
///   R3   y^i Sigma_ij.k + 2/(n+1) H_jk = 0
///   R4   Xi_j.k - 2 H_jk - (n+1) Sigma_jk = 0
///   R5   (n+1) y^j Sigma_jk + Xi_k = 0
struct RelationReport {
  std::vector<RelationResidual> entries;
  double max() const;
  bool pass(double tol = 1e-7) const { return max() < tol; }
};

RelationReport relations_check(SCurvatureField& sq);
RelationReport relations_check(const MetricModel& m, const SamplePoint& at, const VolumeForm& vol);

}  // namespace finsler

#pragma once

#include <optional>

#include "finsler/geometry.hpp"
#include "finsler/randers.hpp"
#include "finsler/s_quantities.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

/// Projectively invariant curvature tensors, as jets over one LocalGeometry.
///
///   D^i_jkl  = d^3/dy^j dy^k dy^l (G^i - G^m_m y^i/(n+1))        (order K-6)
///   Kh_jk    = n K_jk + K_kj + y^r K_kr.j                         (order K-7)
///   W^i_jkl  = K^i_jkl - 1/(n^2-1) { delta^i_j (Kh_kl - Kh_lk)
///              + delta^i_k Kh_jl - delta^i_l Kh_jk + y^i (Kh_kl - Kh_lk)_.j }   (order K-8)
///   Wt^i_jkl = K^i_jkl - delta^i_l/(1-n^2) { Kh_jk + n/(n+1) y^r (K_jr.k - K_jk.r) }
///              + delta^i_k/(1-n^2) { Kh_jl + n/(n+1) y^r (K_jr.l - K_jl.r) }       (order K-7)
///   W*^i_jkl = K^i_jkl - 1/(n^2-1) { delta^i_k (n K_jl + K_lj)
///              - delta^i_l (n K_jk + K_kj) + (n-1) delta^i_j (K_kl - K_lk) }        (order K-6)
class ProjectiveTensors {
 public:
  explicit ProjectiveTensors(LocalGeometry& geo);

  const JetTensor& douglas();
  const JetTensor& ricci_hat();
  const JetTensor& weyl();
  const JetTensor& weyl_tilde();
  const JetTensor& weyl_star();

 private:
  LocalGeometry* geo_;
  std::optional<JetTensor> D_, Kh_, dK_, W_, Wt_, Ws_;
  const JetTensor& ricci_vertical();  // K_jk.l
};

/// Z_jl = (K_jl - K_lj)/2 - (n+1)/2 Sigma_jl.
JetTensor z_tensor(SCurvatureField& sq);
/// alpha s^i_j.
JetTensor alpha_s(LocalRanders& r);

struct InvariantTensors {
  TensorValue D, W, W_tilde, W_star, Z;
  /// Empty (rank 0) for metrics without a Randers split.
  TensorValue alpha_s;
};

InvariantTensors invariant_tensors(const MetricModel& m, const SamplePoint& at);

}  // namespace finsler

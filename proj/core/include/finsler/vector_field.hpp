#pragma once

#include <span>
#include <string>
#include <vector>

#include "finsler/jet.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

/// V^i(x) = b^i + A^i_j x^j + C^i_jk x^j x^k with C symmetric in (j, k).
class PolyVectorField {
 public:
  PolyVectorField() = default;
  /// `A` is row-major (i, j), `C` is row-major (i, j, k); C is symmetrized.
  /// Empty vectors mean zero parts.
  PolyVectorField(int n, std::vector<double> b, std::vector<double> A, std::vector<double> C,
                  std::string name = {});

  static PolyVectorField zero(int n, std::string name = {});
  /// Linear combination sum_k w_k V_k of fields of equal dimension.
  static PolyVectorField combine(std::span<const PolyVectorField> fields, std::span<const double> w,
                                 std::string name = {});

  int dim() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  double b(int i) const { return b_[static_cast<std::size_t>(i)]; }
  double A(int i, int j) const { return A_[static_cast<std::size_t>(i * n_ + j)]; }
  double C(int i, int j, int k) const { return C_[static_cast<std::size_t>((i * n_ + j) * n_ + k)]; }
  int degree() const;

  std::vector<double> operator()(std::span<const double> x) const;
  /// Components V^i as jets of the base coordinates.
  std::vector<Jet> evaluate(std::span<const Jet> x) const;
  /// dV^i/dx^k as jets, row-major (i, k).
  std::vector<Jet> jacobian(std::span<const Jet> x) const;
  /// b, then A row-major, then the upper triangle (j <= k) of each C^i.
  std::vector<double> coefficients() const;

 private:
  int n_ = 0;
  std::vector<double> b_, A_, C_;
  std::string name_;
};

/// Complete lift V^ = V^i d/dx^i + y^k dV^i/dx^k d/dy^i acting on jets of a
/// context whose variables are x^1..x^n, y^1..y^n.
class CompleteLift {
 public:
  CompleteLift(const PolyVectorField& V, std::span<const Jet> x, std::span<const Jet> y);

  int dim() const noexcept { return n_; }
  const std::vector<Jet>& components() const noexcept { return v_; }
  /// dV^i/dx^k, row-major (i, k).
  const std::vector<Jet>& jacobian() const noexcept { return dv_; }

  /// V^(f).
  Jet apply(const Jet& f) const;
  /// Lie derivative of a tensor on the pullback bundle:
  /// V^(T) - sum_upper T^..r.. dV^a/dx^r + sum_lower T_..r.. dV^r/dx^a.
  JetTensor lie(const JetTensor& t) const;
  /// Lie derivative of spray coefficients: V^(G^i) + C^i_jk y^j y^k - G^k dV^i/dx^k.
  JetTensor lie_spray(const JetTensor& G) const;

 private:
  const PolyVectorField* V_;
  int n_;
  std::vector<Jet> y_;
  std::vector<Jet> v_;
  std::vector<Jet> dv_;
  std::vector<Jet> fiber_;  // y^k dV^i/dx^k
};

}  // namespace finsler

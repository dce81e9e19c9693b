#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finsler/metric.hpp"
#include "finsler/polynomial.hpp"
#include "finsler/vector_field.hpp"

namespace finsler {

/// F = sqrt(|y|^2 - (|x|^2 |y|^2 - <x,y>^2)) / (1 - |x|^2)
///     + sign1 <x,y> / (1 - |x|^2) + sign2 <a,y> / (1 + <a,x>)   on |x| < 1.
struct FunkSpec {
  int n = 2;
  int sign1 = 1;
  int sign2 = 1;
  std::vector<double> a;  // empty means zero
};

MetricModel funk(const FunkSpec& spec);

/// Projective ball model of constant curvature k; k = 0 is Euclidean space and
/// k = -1 the Klein model a_ij = [(1 - |x|^2) delta_ij + x_i x_j] / (1 - |x|^2)^2.
struct SpaceFormSpec {
  int n = 2;
  double k = 0.0;
};

RiemannianSpec klein(const SpaceFormSpec& spec);
MetricModel space_form(const SpaceFormSpec& spec);
MetricModel euclidean(int n);

/// F = |y| + <b, y> with constant b, |b| < 1.
MetricModel minkowski_randers(int n, std::vector<double> b);

/// Killing fields V = Q x + C + k <x, C> x of a space form: n translation-type
/// fields followed by the n(n-1)/2 rotations.
std::vector<PolyVectorField> killing_basis(const SpaceFormSpec& spec);

/// Translations e_i, then linear fields x^j e_i, then <e_i, x> x: n(n+2) fields.
std::vector<PolyVectorField> flat_projective_basis(int n);

/// Randers metric with polynomial a_ij(x) (row-major n x n, symmetrized) and b_i(x).
struct RandersPolySpec {
  int n = 2;
  std::vector<Polynomial> a;
  std::vector<Polynomial> b;
};

MetricModel polynomial_randers(std::string name, const RandersPolySpec& spec);

/// a = I + 0.05 p(x), b = b_amplitude q(x) with p, q of degree <= 2 and
/// coefficients in [-1, 1], redrawn until Gershgorin bounds keep a positive
/// definite and |b|_a < 0.8 on the cube |x_i| <= 0.7.
RandersPolySpec random_randers_spec(int n, std::uint64_t seed, double b_amplitude = 0.08);

}  // namespace finsler

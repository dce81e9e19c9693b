#pragma once

#include <span>
#include <vector>

#include "finsler/jet.hpp"

namespace finsler {

struct Monomial {
  double coeff = 0.0;
  std::vector<int> exponents;
};

/// Polynomial in the base coordinates x^1..x^n.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(int n, std::vector<Monomial> terms);

  static Polynomial constant(int n, double c);

  int dim() const noexcept { return n_; }
  int degree() const;
  const std::vector<Monomial>& terms() const noexcept { return terms_; }

  double operator()(std::span<const double> x) const;
  Jet operator()(std::span<const Jet> x) const;

  Polynomial& add_term(double coeff, std::vector<int> exponents);

 private:
  int n_ = 0;
  std::vector<Monomial> terms_;
};

}  // namespace finsler

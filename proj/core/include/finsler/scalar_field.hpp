#pragma once

#include <functional>
#include <span>
#include <vector>

#include "finsler/jet.hpp"

namespace finsler {

/// A smooth scalar function of (x, y) on the slit tangent bundle, evaluated
/// through jets so that every partial derivative comes out exactly.
class ScalarField {
 public:
  using Evaluator = std::function<Jet(std::span<const Jet> x, std::span<const Jet> y)>;

  ScalarField() = default;
  ScalarField(int n, Evaluator evaluator);

  int dim() const noexcept { return n_; }
  explicit operator bool() const noexcept { return static_cast<bool>(evaluator_); }

  Jet operator()(std::span<const Jet> x, std::span<const Jet> y) const;
  Jet evaluate(const JetContext& ctx) const;
  /// Plain value at (x, y), evaluated with order-0 jets.
  double value(std::span<const double> x, std::span<const double> y) const;

 private:
  int n_ = 0;
  Evaluator evaluator_;
};

/// Mixed partial derivative d^|alpha| f / dx^.. dy^.. at the context base point.
double partial(const ScalarField& f, const JetContext& ctx, const MultiIndex& alpha);

/// Same as above, with the derivative given as a sequence of variable indices
/// (x^i is variable i, y^i is variable n + i). Order of the sequence is irrelevant.
double partial_sequence(const ScalarField& f, const JetContext& ctx, std::span<const int> vars);

}  // namespace finsler

#include "finsler/scalar_field.hpp"

#include <string>

#include "finsler/error.hpp"

namespace finsler {

ScalarField::ScalarField(int n, Evaluator evaluator) : n_(n), evaluator_(std::move(evaluator)) {}

Jet ScalarField::operator()(std::span<const Jet> x, std::span<const Jet> y) const {
  return evaluator_(x, y);
}

Jet ScalarField::evaluate(const JetContext& ctx) const {
  if (ctx.dim() != n_) throw Error(ErrorCode::InvalidSpec, "context dimension mismatch");
  const auto vars = ctx.lift_point();
  const std::span<const Jet> all(vars);
  return evaluator_(all.first(static_cast<std::size_t>(n_)), all.subspan(static_cast<std::size_t>(n_)));
}

double ScalarField::value(std::span<const double> x, std::span<const double> y) const {
  const auto table = MultiIndexTable::get(2 * n_, 0);
  std::vector<Jet> xs;
  std::vector<Jet> ys;
  for (double v : x) xs.push_back(Jet::constant(table, v));
  for (double v : y) ys.push_back(Jet::constant(table, v));
  return evaluator_(xs, ys).value();
}

double partial(const ScalarField& f, const JetContext& ctx, const MultiIndex& alpha) {
  if (static_cast<int>(alpha.size()) != ctx.num_vars()) {
    throw Error(ErrorCode::InvalidSpec, "multi-index has wrong length");
  }
  int total = 0;
  for (int a : alpha) total += a;
  if (total > ctx.order()) {
    throw Error(ErrorCode::OrderExceeded, "requested order " + std::to_string(total) +
                                              " exceeds context order " + std::to_string(ctx.order()));
  }
  return f.evaluate(ctx).derivative(alpha);
}

double partial_sequence(const ScalarField& f, const JetContext& ctx, std::span<const int> vars) {
  MultiIndex alpha(static_cast<std::size_t>(ctx.num_vars()), 0);
  for (int v : vars) ++alpha.at(static_cast<std::size_t>(v));
  return partial(f, ctx, alpha);
}

}  // namespace finsler

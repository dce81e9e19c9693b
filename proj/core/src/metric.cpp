#include "finsler/metric.hpp"

#include "finsler/error.hpp"

namespace finsler {

MetricModel::MetricModel(std::string name, MetricKind kind, ScalarField F,
                         std::shared_ptr<const RandersStructure> randers)
    : name_(std::move(name)), kind_(kind), F_(std::move(F)), randers_(std::move(randers)) {}

MetricModel MetricModel::generic(std::string name, ScalarField F) {
  if (!F || F.dim() < 1) throw Error(ErrorCode::InvalidSpec, "metric needs an evaluator");
  return MetricModel(std::move(name), MetricKind::generic, std::move(F), nullptr);
}

MetricModel MetricModel::randers(std::string name, RandersStructure structure,
                                 std::optional<ScalarField> direct) {
  const int n = structure.alpha.n;
  if (n < 1 || structure.beta.n != n || !structure.alpha.a || !structure.beta.b) {
    throw Error(ErrorCode::InvalidSpec, "Randers data has inconsistent dimensions");
  }
  auto shared = std::make_shared<const RandersStructure>(std::move(structure));
  ScalarField F;
  if (direct) {
    F = std::move(*direct);
  } else {
    F = ScalarField(n, [s = shared](std::span<const Jet> x, std::span<const Jet> y) {
      return sqrt(alpha_squared(s->alpha, x, y)) + beta_of(s->beta, x, y);
    });
  }
  return MetricModel(std::move(name), MetricKind::randers, std::move(F), std::move(shared));
}

MetricModel MetricModel::riemannian(std::string name, RiemannianSpec alpha) {
  const int n = alpha.n;
  if (n < 1 || !alpha.a) throw Error(ErrorCode::InvalidSpec, "Riemannian data missing");
  OneFormSpec zero{n, [n](std::span<const Jet> x) {
                     return std::vector<Jet>(static_cast<std::size_t>(n),
                                             Jet::constant(x[0].table(), 0.0));
                   }};
  auto shared = std::make_shared<const RandersStructure>(RandersStructure{alpha, zero});
  ScalarField F(n, [s = shared](std::span<const Jet> x, std::span<const Jet> y) {
    return sqrt(alpha_squared(s->alpha, x, y));
  });
  return MetricModel(std::move(name), MetricKind::riemannian, std::move(F), std::move(shared));
}

Jet alpha_squared(const RiemannianSpec& alpha, std::span<const Jet> x, std::span<const Jet> y) {
  const auto a = alpha.a(x);
  const auto n = static_cast<std::size_t>(alpha.n);
  Jet sum = Jet::constant(y[0].table(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    Jet row = a[i * n + i] * y[i];
    for (std::size_t j = i + 1; j < n; ++j) row += 2.0 * (a[i * n + j] * y[j]);
    sum += row * y[i];
  }
  return sum;
}

Jet beta_of(const OneFormSpec& beta, std::span<const Jet> x, std::span<const Jet> y) {
  const auto b = beta.b(x);
  Jet sum = Jet::constant(y[0].table(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) sum += b[i] * y[i];
  return sum;
}

}  // namespace finsler

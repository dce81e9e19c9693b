#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finsler/jet.hpp"
#include "finsler/scalar_field.hpp"

namespace finsler {

/// A point (x, y) of the slit tangent bundle.
struct SamplePoint {
  std::vector<double> x;
  std::vector<double> y;
};

/// Riemannian metric alpha = sqrt(a_ij(x) y^i y^j). Entries are returned
/// row-major as jets of the base coordinates.
struct RiemannianSpec {
  int n = 0;
  std::function<std::vector<Jet>(std::span<const Jet> x)> a;
};

/// One-form beta = b_i(x) y^i.
struct OneFormSpec {
  int n = 0;
  std::function<std::vector<Jet>(std::span<const Jet> x)> b;
};

/// alpha + beta data of a Randers metric.
struct RandersStructure {
  RiemannianSpec alpha;
  OneFormSpec beta;
};

enum class MetricKind { generic, randers, riemannian };

/// A Finsler metric as an evaluatable scalar field, optionally with its
/// analytic Randers split. Immutable after construction.
class MetricModel {
 public:
  static MetricModel generic(std::string name, ScalarField F);
  /// Randers metric F = alpha + beta. When `direct` is given it is used as
  /// the evaluator for F (the split is still available for closed forms).
  static MetricModel randers(std::string name, RandersStructure structure,
                             std::optional<ScalarField> direct = std::nullopt);
  static MetricModel riemannian(std::string name, RiemannianSpec alpha);

  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return F_.dim(); }
  MetricKind kind() const noexcept { return kind_; }
  const ScalarField& F() const noexcept { return F_; }
  /// Randers split (Riemannian metrics report beta = 0); null for generic metrics.
  const RandersStructure* randers_structure() const noexcept { return randers_.get(); }

  double operator()(std::span<const double> x, std::span<const double> y) const {
    return F_.value(x, y);
  }

 private:
  MetricModel(std::string name, MetricKind kind, ScalarField F,
              std::shared_ptr<const RandersStructure> randers);

  std::string name_;
  MetricKind kind_;
  ScalarField F_;
  std::shared_ptr<const RandersStructure> randers_;
};

/// alpha^2 = a_ij y^i y^j and beta = b_i y^i as jets.
Jet alpha_squared(const RiemannianSpec& alpha, std::span<const Jet> x, std::span<const Jet> y);
Jet beta_of(const OneFormSpec& beta, std::span<const Jet> x, std::span<const Jet> y);

}  // namespace finsler

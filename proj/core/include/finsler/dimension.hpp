#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "finsler/metric.hpp"
#include "finsler/sampling.hpp"
#include "finsler/vector_field.hpp"

namespace finsler {

struct DimScanOptions {
  int count = 25;
  std::uint64_t seed = 1;
  double radius = kDefaultRadius;
  /// Singular values at or below rel_threshold * max(1, sigma_max) count as null.
  double rel_threshold = 1e-6;
  int max_rounds = 3;
  int order = 6;
};

struct DimScanResult {
  std::vector<double> singular_values;  // descending, of the final matrix
  int nullity = 0;
  int rows = 0;
  int columns = 0;
  int family_rank = 0;  // rank of the family's coefficient vectors
  int points = 0;
  int rounds = 0;
  double threshold = 0.0;
  /// Nullity at count, 2 count, 4 count, ... as evaluated.
  std::vector<int> nullity_history;
};

/// Column j holds the residual functionals of family member j at every
/// sample point: the components of L G - P y followed by those of L Sigma.
/// Both are linear in the field, so the nullity is the dimension of the
/// C-projective fields inside the span of the family.
std::vector<std::vector<double>> constraint_columns(const MetricModel& m,
                                                    std::span<const PolyVectorField> family,
                                                    std::span<const SamplePoint> samples, int order = 6);

/// Singular values (descending) of a column-major list of equal-length columns.
std::vector<double> singular_values(const std::vector<std::vector<double>>& columns, std::size_t rows);

/// Nullity of the constraint matrix less the dependencies of the family
/// itself, doubling the sample count until it is
/// stable; throws RankDeficientSampling if it keeps changing for max_rounds.
DimScanResult dim_scan(const MetricModel& m, std::span<const PolyVectorField> family,
                       const DimScanOptions& opt = {});

}  // namespace finsler

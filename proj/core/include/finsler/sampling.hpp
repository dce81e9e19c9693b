#pragma once

#include <cstdint>
#include <vector>

#include "finsler/metric.hpp"

namespace finsler {

inline constexpr double kDefaultRadius = 0.7;
inline constexpr double kMinFiberNorm = 1e-3;

/// Deterministic sample points: x uniform in the closed ball of the given
/// radius, y uniform on the unit sphere (draws with |y| < 1e-3 are rejected
/// before normalization). The first k points of a longer run coincide with a
/// run of length k for the same seed.
std::vector<SamplePoint> sample_points(int n, int count, std::uint64_t seed, double radius = kDefaultRadius);

}  // namespace finsler

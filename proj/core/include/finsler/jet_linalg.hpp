#pragma once

#include <span>
#include <vector>

#include "finsler/jet.hpp"

namespace finsler {

/// Inverse of a row-major n x n matrix of jets by Gauss-Jordan elimination
/// with partial pivoting on the base values.
std::vector<Jet> invert(std::span<const Jet> m, int n);

/// Determinant of a row-major n x n matrix of jets.
Jet determinant(std::span<const Jet> m, int n);

}  // namespace finsler

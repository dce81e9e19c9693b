#include "finsler/jet_linalg.hpp"

#include <cmath>
#include <utility>

#include "finsler/error.hpp"

namespace finsler {

namespace {

std::size_t at(int n, int i, int j) { return static_cast<std::size_t>(i * n + j); }

int pivot_row(const std::vector<Jet>& a, int n, int col) {
  int best = col;
  for (int r = col + 1; r < n; ++r) {
    if (std::abs(a[at(n, r, col)].value()) > std::abs(a[at(n, best, col)].value())) best = r;
  }
  if (std::abs(a[at(n, best, col)].value()) < kDivisionFloor) {
    throw Error(ErrorCode::SingularMetric, "singular jet matrix");
  }
  return best;
}

}  // namespace

std::vector<Jet> invert(std::span<const Jet> m, int n) {
  std::vector<Jet> a(m.begin(), m.end());
  std::vector<Jet> inv;
  inv.reserve(a.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) inv.push_back(Jet::constant(a[0].table(), i == j ? 1.0 : 0.0));
  }
  for (int col = 0; col < n; ++col) {
    const int p = pivot_row(a, n, col);
    if (p != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a[at(n, p, j)], a[at(n, col, j)]);
        std::swap(inv[at(n, p, j)], inv[at(n, col, j)]);
      }
    }
    const Jet rinv = reciprocal(a[at(n, col, col)]);
    for (int j = 0; j < n; ++j) {
      a[at(n, col, j)] = a[at(n, col, j)] * rinv;
      inv[at(n, col, j)] = inv[at(n, col, j)] * rinv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Jet factor = a[at(n, r, col)];
      for (int j = 0; j < n; ++j) {
        a[at(n, r, j)] -= factor * a[at(n, col, j)];
        inv[at(n, r, j)] -= factor * inv[at(n, col, j)];
      }
    }
  }
  return inv;
}

Jet determinant(std::span<const Jet> m, int n) {
  std::vector<Jet> a(m.begin(), m.end());
  Jet det = Jet::constant(a[0].table(), 1.0);
  for (int col = 0; col < n; ++col) {
    const int p = pivot_row(a, n, col);
    if (p != col) {
      for (int j = 0; j < n; ++j) std::swap(a[at(n, p, j)], a[at(n, col, j)]);
      det = -det;
    }
    det = det * a[at(n, col, col)];
    const Jet rinv = reciprocal(a[at(n, col, col)]);
    for (int r = col + 1; r < n; ++r) {
      const Jet factor = a[at(n, r, col)] * rinv;
      for (int j = col; j < n; ++j) a[at(n, r, j)] -= factor * a[at(n, col, j)];
    }
  }
  return det;
}

}  // namespace finsler

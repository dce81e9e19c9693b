#include "finsler/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace finsler {

TensorValue values(const JetTensor& t) {
  TensorValue out(t.dim(), t.variance());
  for (std::size_t k = 0; k < t.size(); ++k) out[k] = t[k].value();
  out.symmetries = t.symmetries;
  return out;
}

JetTensor truncated(const JetTensor& t, int order) {
  JetTensor out(t.dim(), t.variance());
  for (std::size_t k = 0; k < t.size(); ++k) out[k] = t[k].truncated(order);
  out.symmetries = t.symmetries;
  return out;
}

JetTensor diff(const JetTensor& t, int var) {
  JetTensor out(t.dim(), t.variance());
  for (std::size_t k = 0; k < t.size(); ++k) out[k] = t[k].diff(var);
  return out;
}

int min_order(const JetTensor& t) {
  int order = t.size() ? t[0].order() : 0;
  for (const auto& c : t.data()) order = std::min(order, c.order());
  return order;
}

double max_abs(const TensorValue& t) {
  double m = 0.0;
  for (double v : t.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const TensorValue& a, const TensorValue& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidSpec, "tensor shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double symmetry_residual(const TensorValue& t) {
  double worst = 0.0;
  for (const auto& sym : t.symmetries) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      auto idx = t.unflatten(k);
      std::swap(idx[static_cast<std::size_t>(sym.first)], idx[static_cast<std::size_t>(sym.second)]);
      const double other = t[t.flatten(idx)];
      const double r = sym.anti ? t[k] + other : t[k] - other;
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

std::string legend(const std::string& name, const std::string& variance) {
  static constexpr char kLetters[] = "ijklmpqr";
  std::string out = name;
  char current = 0;
  for (std::size_t s = 0; s < variance.size(); ++s) {
    const char mark = variance[s] == 'u' ? '^' : '_';
    if (mark != current) {
      out += mark;
      current = mark;
    }
    out += kLetters[s % 8];
  }
  return out;
}

}  // namespace finsler

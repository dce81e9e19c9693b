#include "finsler/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "finsler/error.hpp"

namespace finsler {

Jet::Jet(std::shared_ptr<const MultiIndexTable> table, int order)
    : table_(std::move(table)), order_(order) {
  if (order_ < 0 || order_ > table_->max_order()) {
    throw Error(ErrorCode::OrderExceeded, "jet order " + std::to_string(order) +
                                              " outside table order " +
                                              std::to_string(table_->max_order()));
  }
  c_.assign(table_->size(order_), 0.0);
}

Jet Jet::constant(std::shared_ptr<const MultiIndexTable> table, double value) {
  const int order = table->max_order();
  Jet j(std::move(table), order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(std::shared_ptr<const MultiIndexTable> table, int var, double value) {
  Jet j = constant(std::move(table), value);
  if (j.order_ >= 1) j.c_[static_cast<std::size_t>(1 + var)] = 1.0;
  return j;
}

void Jet::require_same_table(const Jet& other) const {
  if (table_ != other.table_) {
    throw Error(ErrorCode::InvalidSpec, "jets from different contexts combined");
  }
}

double Jet::coefficient(std::span<const int> alpha) const {
  int total = 0;
  for (int a : alpha) total += a;
  if (total > order_) {
    throw Error(ErrorCode::OrderExceeded, "derivative order " + std::to_string(total) +
                                              " exceeds jet order " + std::to_string(order_));
  }
  const auto idx = table_->find(alpha);
  if (!idx) throw Error(ErrorCode::OrderExceeded, "multi-index not representable");
  return c_[*idx];
}

double Jet::derivative(std::span<const int> alpha) const {
  double factorial = 1.0;
  for (int a : alpha) {
    for (int k = 2; k <= a; ++k) factorial *= k;
  }
  return factorial * coefficient(alpha);
}

Jet Jet::truncated(int order) const {
  if (order >= order_) return *this;
  Jet out = *this;
  out.order_ = order;
  out.c_.resize(table_->size(order));
  return out;
}

Jet Jet::diff(int var) const {
  if (order_ == 0) {
    throw Error(ErrorCode::OrderExceeded, "cannot differentiate an order-0 jet");
  }
  Jet out(table_, order_ - 1);
  const std::size_t n = out.c_.size();
  for (std::size_t m = 0; m < n; ++m) {
    const auto up = table_->raise(var, m);
    out.c_[m] = (table_->exponents(m)[static_cast<std::size_t>(var)] + 1) *
                c_[static_cast<std::size_t>(up)];
  }
  return out;
}

bool Jet::is_finite() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return std::isfinite(v); });
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& v : out.c_) v = -v;
  return out;
}

Jet& Jet::operator+=(const Jet& other) {
  require_same_table(other);
  if (other.order_ < order_) *this = truncated(other.order_);
  for (std::size_t m = 0; m < c_.size(); ++m) c_[m] += other.c_[m];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  require_same_table(other);
  if (other.order_ < order_) *this = truncated(other.order_);
  for (std::size_t m = 0; m < c_.size(); ++m) c_[m] -= other.c_[m];
  return *this;
}

Jet& Jet::operator*=(const Jet& other) {
  *this = *this * other;
  return *this;
}

Jet& Jet::operator+=(double s) {
  c_[0] += s;
  return *this;
}

Jet& Jet::operator-=(double s) {
  c_[0] -= s;
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Jet& Jet::operator/=(double s) {
  for (double& v : c_) v /= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.require_same_table(b);
  const int order = std::min(a.order_, b.order_);
  Jet out(a.table_, order);
  const double* ac = a.c_.data();
  const double* bc = b.c_.data();
  double* oc = out.c_.data();
  for (const auto& p : a.table_->products(order)) oc[p.out] += ac[p.lhs] * bc[p.rhs];
  return out;
}

Jet operator/(const Jet& a, const Jet& b) {
  a.require_same_table(b);
  const double b0 = b.c_[0];
  if (!(std::abs(b0) >= kDivisionFloor)) {
    throw Error(ErrorCode::DivisionByZeroValue, "divisor value " + std::to_string(b0));
  }
  const int order = std::min(a.order_, b.order_);
  const auto& table = *a.table_;
  Jet q(a.table_, order);
  q.c_[0] = a.c_[0] / b0;
  // Solve b * q = a degree by degree; rhs indices != 0 only touch lower degrees of q.
  for (int d = 1; d <= order; ++d) {
    for (const auto& p : table.products_of_degree(d)) {
      if (p.rhs != 0) q.c_[p.out] += q.c_[p.lhs] * b.c_[p.rhs];
    }
    for (std::size_t k = table.size(d - 1); k < table.size(d); ++k) {
      q.c_[k] = (a.c_[k] - q.c_[k]) / b0;
    }
  }
  return q;
}

Jet reciprocal(const Jet& a) { return Jet::constant(a.table(), 1.0) / a; }

Jet operator/(double s, const Jet& a) { return Jet::constant(a.table(), s) / a; }

Jet sqrt(const Jet& a) {
  const double a0 = a.c_[0];
  if (!(a0 > 0.0)) {
    throw Error(ErrorCode::DomainError, "sqrt of non-positive value " + std::to_string(a0));
  }
  const auto& table = *a.table_;
  Jet s(a.table_, a.order_);
  s.c_[0] = std::sqrt(a0);
  const double two_s0 = 2.0 * s.c_[0];
  for (int d = 1; d <= a.order_; ++d) {
    for (const auto& p : table.products_of_degree(d)) {
      if (p.lhs != 0 && p.rhs != 0) s.c_[p.out] += s.c_[p.lhs] * s.c_[p.rhs];
    }
    for (std::size_t k = table.size(d - 1); k < table.size(d); ++k) {
      s.c_[k] = (a.c_[k] - s.c_[k]) / two_s0;
    }
  }
  return s;
}

// log, exp and pow use the Euler operator D (multiplies the degree-d part
// by d): D log a = Da / a, D exp a = exp a * Da, a * D(a^p) = p a^p * Da.
// Each turns into a degree-by-degree recurrence over the product table.

Jet log(const Jet& a) {
  const double a0 = a.c_[0];
  if (!(a0 > 0.0)) {
    throw Error(ErrorCode::DomainError, "log of non-positive value " + std::to_string(a0));
  }
  const auto& table = *a.table_;
  Jet l(a.table_, a.order_);
  l.c_[0] = std::log(a0);
  for (int d = 1; d <= a.order_; ++d) {
    for (const auto& p : table.products_of_degree(d)) {
      if (p.rhs != 0 && p.lhs != 0) {
        l.c_[p.out] += table.degree(p.lhs) * l.c_[p.lhs] * a.c_[p.rhs];
      }
    }
    for (std::size_t k = table.size(d - 1); k < table.size(d); ++k) {
      l.c_[k] = (d * a.c_[k] - l.c_[k]) / (d * a0);
    }
  }
  return l;
}

Jet exp(const Jet& a) {
  const auto& table = *a.table_;
  Jet e(a.table_, a.order_);
  e.c_[0] = std::exp(a.c_[0]);
  for (int d = 1; d <= a.order_; ++d) {
    for (const auto& p : table.products_of_degree(d)) {
      if (p.rhs != 0) e.c_[p.out] += table.degree(p.rhs) * e.c_[p.lhs] * a.c_[p.rhs];
    }
    for (std::size_t k = table.size(d - 1); k < table.size(d); ++k) e.c_[k] /= d;
  }
  return e;
}

Jet pow(const Jet& a, double p) {
  const double a0 = a.c_[0];
  if (!(a0 > 0.0)) {
    throw Error(ErrorCode::DomainError, "pow of non-positive value " + std::to_string(a0));
  }
  const auto& table = *a.table_;
  Jet q(a.table_, a.order_);
  q.c_[0] = std::pow(a0, p);
  for (int d = 1; d <= a.order_; ++d) {
    for (const auto& pr : table.products_of_degree(d)) {
      if (pr.rhs != 0) {
        q.c_[pr.out] +=
            (p * table.degree(pr.rhs) - table.degree(pr.lhs)) * q.c_[pr.lhs] * a.c_[pr.rhs];
      }
    }
    for (std::size_t k = table.size(d - 1); k < table.size(d); ++k) q.c_[k] /= d * a0;
  }
  return q;
}

Jet jet_arith(const Jet& a, const Jet& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  return a;
}

Jet jet_func(const Jet& a, JetFunction f, double exponent) {
  switch (f) {
    case JetFunction::sqrt: return sqrt(a);
    case JetFunction::ln: return log(a);
    case JetFunction::pow: return pow(a, exponent);
  }
  return a;
}

JetContext::JetContext(std::vector<double> x, std::vector<double> y, int order)
    : x_(std::move(x)), y_(std::move(y)), order_(order) {
  if (x_.empty() || x_.size() != y_.size()) {
    throw Error(ErrorCode::InvalidSpec, "base point needs matching non-empty x and y");
  }
  if (order_ < 1) throw Error(ErrorCode::InvalidSpec, "jet order must be >= 1");
  double norm2 = 0.0;
  for (double v : y_) norm2 += v * v;
  if (!(norm2 > 0.0)) throw Error(ErrorCode::DomainError, "fiber coordinate y must be nonzero");
  table_ = MultiIndexTable::get(2 * dim(), order_);
}

std::vector<Jet> JetContext::lift_point() const {
  std::vector<Jet> out;
  out.reserve(static_cast<std::size_t>(num_vars()));
  for (int i = 0; i < dim(); ++i) out.push_back(Jet::variable(table_, x_var(i), x_[static_cast<std::size_t>(i)]));
  for (int i = 0; i < dim(); ++i) out.push_back(Jet::variable(table_, y_var(i), y_[static_cast<std::size_t>(i)]));
  return out;
}

}  // namespace finsler

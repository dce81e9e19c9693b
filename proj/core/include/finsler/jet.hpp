#pragma once

#include <memory>
#include <span>
#include <vector>

#include "finsler/multi_index.hpp"

namespace finsler {

/// Default truncation order for jets.
inline constexpr int kDefaultOrder = 7;

/// Values of |b| below this are treated as zero divisors.
inline constexpr double kDivisionFloor = 1e-14;

/// Truncated multivariate Taylor expansion of a scalar germ.
///
/// A jet of order r holds the Taylor coefficients of every monomial of total
/// degree <= r in the jet variables. Binary operations truncate to the
/// smaller order of their operands; differentiation lowers the order by one.
/// Constants created from a table carry the table's full order.
class Jet {
 public:
  Jet() = default;
  Jet(std::shared_ptr<const MultiIndexTable> table, int order);

  static Jet constant(std::shared_ptr<const MultiIndexTable> table, double value);
  static Jet variable(std::shared_ptr<const MultiIndexTable> table, int var, double value);

  bool valid() const noexcept { return static_cast<bool>(table_); }
  int order() const noexcept { return order_; }
  int num_vars() const { return table_->num_vars(); }
  const std::shared_ptr<const MultiIndexTable>& table() const noexcept { return table_; }

  double value() const { return c_[0]; }
  std::span<const double> coefficients() const noexcept { return c_; }
  std::span<double> coefficients() noexcept { return c_; }

  /// Taylor coefficient of the monomial with exponents alpha.
  double coefficient(std::span<const int> alpha) const;
  /// True mixed partial derivative: alpha! times the Taylor coefficient.
  double derivative(std::span<const int> alpha) const;

  Jet truncated(int order) const;
  /// Partial derivative in one jet variable; the result has order() - 1.
  Jet diff(int var) const;

  bool is_finite() const;

  Jet operator-() const;
  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(const Jet& other);
  Jet& operator+=(double s);
  Jet& operator-=(double s);
  Jet& operator*=(double s);
  Jet& operator/=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a /= s; }
  friend Jet operator/(double s, const Jet& a);

  friend Jet sqrt(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet exp(const Jet& a);
  friend Jet pow(const Jet& a, double p);

 private:
  void require_same_table(const Jet& other) const;

  std::shared_ptr<const MultiIndexTable> table_;
  int order_ = 0;
  std::vector<double> c_;
};

Jet reciprocal(const Jet& a);

enum class ArithOp { add, sub, mul, div };
enum class JetFunction { sqrt, ln, pow };

Jet jet_arith(const Jet& a, const Jet& b, ArithOp op);
/// `exponent` is only used by JetFunction::pow.
Jet jet_func(const Jet& a, JetFunction f, double exponent = 1.0);

/// Base point (x, y) of the slit tangent bundle together with the jet shape.
/// Variables 0..n-1 are x^1..x^n, variables n..2n-1 are y^1..y^n.
class JetContext {
 public:
  JetContext(std::vector<double> x, std::vector<double> y, int order = kDefaultOrder);

  int dim() const noexcept { return static_cast<int>(x_.size()); }
  int order() const noexcept { return order_; }
  int num_vars() const noexcept { return 2 * dim(); }
  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& y() const noexcept { return y_; }
  const std::shared_ptr<const MultiIndexTable>& table() const noexcept { return table_; }

  int x_var(int i) const noexcept { return i; }
  int y_var(int i) const noexcept { return dim() + i; }

  /// Coordinate functions x^1..x^n, y^1..y^n seeded as jet variables.
  std::vector<Jet> lift_point() const;
  Jet constant(double value) const { return Jet::constant(table_, value); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  int order_;
  std::shared_ptr<const MultiIndexTable> table_;
};

}  // namespace finsler

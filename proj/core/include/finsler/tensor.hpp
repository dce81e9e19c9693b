#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "finsler/error.hpp"
#include "finsler/jet.hpp"

namespace finsler {

/// Declared (anti)symmetry between two index slots.
struct Symmetry {
  int first = 0;
  int second = 1;
  bool anti = false;
};

/// Dense n^rank array with index variance. The variance string has one
/// character per slot: 'u' for a contravariant (upper) index, 'd' for a
/// covariant (lower) one. Components are stored row-major.
template <class T>
class Tensor {
 public:
  Tensor() = default;
  Tensor(int n, std::string variance, const T& fill = T{})
      : n_(n), variance_(std::move(variance)), data_(count(n, variance_.size()), fill) {}

  int dim() const noexcept { return n_; }
  int rank() const noexcept { return static_cast<int>(variance_.size()); }
  const std::string& variance() const noexcept { return variance_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }
  T& operator[](std::size_t flat) { return data_[flat]; }
  const T& operator[](std::size_t flat) const { return data_[flat]; }

  template <class... I>
  T& operator()(I... idx) {
    return data_[offset(idx...)];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return data_[offset(idx...)];
  }

  /// Multi-index of a flat position (row-major).
  std::vector<int> unflatten(std::size_t flat) const {
    std::vector<int> idx(variance_.size());
    for (std::size_t s = idx.size(); s-- > 0;) {
      idx[s] = static_cast<int>(flat % static_cast<std::size_t>(n_));
      flat /= static_cast<std::size_t>(n_);
    }
    return idx;
  }
  std::size_t flatten(std::span<const int> idx) const {
    std::size_t off = 0;
    for (int i : idx) off = off * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    return off;
  }
  /// Distance in the flat array between consecutive values of one slot.
  std::size_t stride(int slot) const {
    std::size_t s = 1;
    for (int k = rank() - 1; k > slot; --k) s *= static_cast<std::size_t>(n_);
    return s;
  }

  std::vector<Symmetry> symmetries;

 private:
  static std::size_t count(int n, std::size_t rank) {
    std::size_t c = 1;
    for (std::size_t k = 0; k < rank; ++k) c *= static_cast<std::size_t>(n);
    return c;
  }
  template <class... I>
  std::size_t offset(I... idx) const {
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx)), ...);
    return off;
  }

  int n_ = 0;
  std::string variance_;
  std::vector<T> data_;
};

using TensorValue = Tensor<double>;
using JetTensor = Tensor<Jet>;

/// Base-point values of a jet tensor; symmetries are carried over.
TensorValue values(const JetTensor& t);
/// Truncate every component to the given order.
JetTensor truncated(const JetTensor& t, int order);
/// Partial derivative of every component in one jet variable.
JetTensor diff(const JetTensor& t, int var);
/// Smallest component order.
int min_order(const JetTensor& t);

double max_abs(const TensorValue& t);
double max_abs_diff(const TensorValue& a, const TensorValue& b);
/// Largest violation of the declared symmetries.
double symmetry_residual(const TensorValue& t);

/// Index legend such as "G^i_jk" used in reports.
std::string legend(const std::string& name, const std::string& variance);

}  // namespace finsler

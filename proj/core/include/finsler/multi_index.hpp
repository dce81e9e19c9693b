#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace finsler {

/// Exponent vector over the jet variables (x^1..x^n, y^1..y^n).
using MultiIndex = std::vector<int>;

/// Graded enumeration of all monomials in `num_vars` variables with total
/// degree <= `max_order`, plus the index tables needed for truncated
/// multiplication and differentiation.
///
/// Monomials are stored degree by degree, so the monomials of degree <= r
/// always form a prefix of length size(r). Product triplets are sorted by
/// the degree of their output, which lets truncated products and the
/// degree-by-degree recurrences (division, sqrt, log, pow) walk a prefix.
class MultiIndexTable {
 public:
  struct Product {
    std::uint32_t lhs;
    std::uint32_t rhs;
    std::uint32_t out;
  };

  /// Shared, process-wide table for the given shape. Thread-safe.
  static std::shared_ptr<const MultiIndexTable> get(int num_vars, int max_order);

  MultiIndexTable(int num_vars, int max_order);

  int num_vars() const noexcept { return num_vars_; }
  int max_order() const noexcept { return max_order_; }

  /// Number of monomials of degree <= order.
  std::size_t size(int order) const { return size_up_to_[static_cast<std::size_t>(order)]; }
  int degree(std::size_t m) const { return degree_[m]; }
  std::span<const std::uint8_t> exponents(std::size_t m) const {
    return {exps_.data() + m * static_cast<std::size_t>(num_vars_),
            static_cast<std::size_t>(num_vars_)};
  }

  /// Index of the monomial with the given exponents, if within max_order.
  std::optional<std::size_t> find(std::span<const int> exponents) const;

  /// Index of m + e_var, or -1 when that exceeds max_order.
  std::int64_t raise(int var, std::size_t m) const {
    return raise_[static_cast<std::size_t>(var) * size(max_order_) + m];
  }

  /// Products with output degree <= order.
  std::span<const Product> products(int order) const {
    return {products_.data(), product_end_[static_cast<std::size_t>(order)]};
  }

  /// Products with output degree exactly d.
  std::span<const Product> products_of_degree(int d) const {
    const std::size_t begin = d == 0 ? 0 : product_end_[static_cast<std::size_t>(d - 1)];
    return {products_.data() + begin, product_end_[static_cast<std::size_t>(d)] - begin};
  }

 private:
  std::uint64_t key(std::span<const int> exponents) const;

  int num_vars_;
  int max_order_;
  std::vector<std::uint8_t> exps_;
  std::vector<int> degree_;
  std::vector<std::size_t> size_up_to_;
  std::vector<std::uint64_t> keys_;
  std::unordered_map<std::uint64_t, std::uint32_t> lookup_;
  std::vector<std::int64_t> raise_;
  std::vector<Product> products_;
  std::vector<std::size_t> product_end_;
};

}  // namespace finsler

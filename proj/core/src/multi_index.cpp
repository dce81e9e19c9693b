#include "finsler/multi_index.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <utility>

#include "finsler/error.hpp"

namespace finsler {

namespace {

void enumerate_degree(int pos, int remaining, std::vector<int>& e,
                      std::vector<std::uint8_t>& out) {
  const int nv = static_cast<int>(e.size());
  if (pos == nv - 1) {
    e[static_cast<std::size_t>(pos)] = remaining;
    for (int v : e) out.push_back(static_cast<std::uint8_t>(v));
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    e[static_cast<std::size_t>(pos)] = v;
    enumerate_degree(pos + 1, remaining - v, e, out);
  }
}

}  // namespace

std::shared_ptr<const MultiIndexTable> MultiIndexTable::get(int num_vars, int max_order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MultiIndexTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{num_vars, max_order}];
  if (!slot) slot = std::make_shared<const MultiIndexTable>(num_vars, max_order);
  return slot;
}

MultiIndexTable::MultiIndexTable(int num_vars, int max_order)
    : num_vars_(num_vars), max_order_(max_order) {
  if (num_vars < 1 || max_order < 0 || max_order > 16) {
    throw Error(ErrorCode::InvalidSpec, "jet table shape out of range");
  }
  const auto nv = static_cast<std::size_t>(num_vars);

  std::vector<int> e(nv, 0);
  for (int d = 0; d <= max_order; ++d) {
    enumerate_degree(0, d, e, exps_);
    size_up_to_.push_back(exps_.size() / nv);
  }
  const std::size_t count = size_up_to_.back();

  degree_.resize(count);
  keys_.resize(count);
  lookup_.reserve(count * 2);
  for (std::size_t m = 0; m < count; ++m) {
    std::vector<int> ex(nv);
    for (std::size_t v = 0; v < nv; ++v) ex[v] = exps_[m * nv + v];
    degree_[m] = std::accumulate(ex.begin(), ex.end(), 0);
    keys_[m] = key(ex);
    lookup_.emplace(keys_[m], static_cast<std::uint32_t>(m));
  }

  // Exponent keys are base-(max_order+1) digits, so the key of a product
  // is the sum of keys whenever the product degree stays <= max_order.
  std::uint64_t unit = 1;
  raise_.assign(nv * count, -1);
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t m = 0; m < count; ++m) {
      if (degree_[m] + 1 > max_order) continue;
      raise_[v * count + m] = lookup_.at(keys_[m] + unit);
    }
    unit *= static_cast<std::uint64_t>(max_order + 1);
  }

  std::vector<std::vector<Product>> by_degree(static_cast<std::size_t>(max_order) + 1);
  for (std::size_t i = 0; i < count; ++i) {
    const int di = degree_[i];
    const std::size_t jmax = size_up_to_[static_cast<std::size_t>(max_order - di)];
    for (std::size_t j = 0; j < jmax; ++j) {
      const auto out = lookup_.at(keys_[i] + keys_[j]);
      by_degree[static_cast<std::size_t>(di + degree_[j])].push_back(
          {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), out});
    }
  }
  for (auto& bucket : by_degree) {
    products_.insert(products_.end(), bucket.begin(), bucket.end());
    product_end_.push_back(products_.size());
  }
}

std::uint64_t MultiIndexTable::key(std::span<const int> exponents) const {
  std::uint64_t k = 0;
  std::uint64_t unit = 1;
  for (int v : exponents) {
    k += static_cast<std::uint64_t>(v) * unit;
    unit *= static_cast<std::uint64_t>(max_order_ + 1);
  }
  return k;
}

std::optional<std::size_t> MultiIndexTable::find(std::span<const int> exponents) const {
  if (static_cast<int>(exponents.size()) != num_vars_) return std::nullopt;
  int total = 0;
  for (int v : exponents) {
    if (v < 0) return std::nullopt;
    total += v;
  }
  if (total > max_order_) return std::nullopt;
  return lookup_.at(key(exponents));
}

}  // namespace finsler

#include "finsler/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "finsler/error.hpp"

namespace finsler {

namespace {

// Distributions are written out so the sequence does not depend on the standard library.
class Source {
 public:
  explicit Source(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = uniform();
    while (u <= 0.0) u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * std::numbers::pi * v);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * v);
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::vector<double> gaussian_vector(Source& src, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& c : v) c = src.normal();
  return v;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

}  // namespace

std::vector<SamplePoint> sample_points(int n, int count, std::uint64_t seed, double radius) {
  if (n < 1 || count < 0) throw Error(ErrorCode::InvalidSpec, "sample_points needs n >= 1, count >= 0");
  if (!(radius >= 0.0)) throw Error(ErrorCode::InvalidSpec, "sample radius must be non-negative");
  Source src(seed);
  std::vector<SamplePoint> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    SamplePoint p;
    std::vector<double> dir = gaussian_vector(src, n);
    double dn = norm(dir);
    while (dn == 0.0) {
      dir = gaussian_vector(src, n);
      dn = norm(dir);
    }
    const double r = radius * std::pow(src.uniform(), 1.0 / n);
    for (auto& c : dir) c *= r / dn;
    p.x = std::move(dir);

    std::vector<double> y = gaussian_vector(src, n);
    double yn = norm(y);
    while (yn < kMinFiberNorm) {
      y = gaussian_vector(src, n);
      yn = norm(y);
    }
    for (auto& c : y) c /= yn;
    p.y = std::move(y);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace finsler

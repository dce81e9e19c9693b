#include "finsler/dimension.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <memory>

#include "finsler/error.hpp"
#include "finsler/geometry.hpp"
#include "finsler/projective.hpp"
#include "finsler/s_quantities.hpp"

namespace finsler {

std::vector<std::vector<double>> constraint_columns(const MetricModel& m,
                                                    std::span<const PolyVectorField> family,
                                                    std::span<const SamplePoint> samples, int order) {
  const int n = m.dim();
  std::vector<std::vector<double>> cols(family.size());
  for (const SamplePoint& at : samples) {
    LocalGeometry geo(m, at, order);
    SCurvatureField sq(geo, default_volume(m));
    const auto& G = geo.spray();
    const auto& sigma = sq.sigma();
    for (std::size_t f = 0; f < family.size(); ++f) {
      if (family[f].dim() != n) throw Error(ErrorCode::InvalidSpec, "field dimension does not match metric");
      const CompleteLift L(family[f], geo.x(), geo.y());
      const TensorValue LG = values(L.lie_spray(G));
      const FactorEstimate P = extract_factor(LG.data(), at.y);
      auto& col = cols[f];
      for (int i = 0; i < n; ++i) col.push_back(LG(i) - P.P * at.y[static_cast<std::size_t>(i)]);
      const TensorValue LS = values(L.lie(sigma));
      for (double v : LS.data()) col.push_back(v);
    }
  }
  return cols;
}

std::vector<double> singular_values(const std::vector<std::vector<double>>& columns, std::size_t rows) {
  Eigen::MatrixXd M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = columns[j][i];
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  // Columns beyond the row count are null directions as well.
  out.resize(columns.size(), 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

namespace {

int nullity_of(const std::vector<double>& sv, double rel, double& threshold) {
  const double smax = sv.empty() ? 0.0 : sv.front();
  threshold = rel * std::max(1.0, smax);
  return static_cast<int>(std::count_if(sv.begin(), sv.end(), [&](double s) { return s <= threshold; }));
}

}  // namespace

DimScanResult dim_scan(const MetricModel& m, std::span<const PolyVectorField> family, const DimScanOptions& opt) {
  if (family.empty()) throw Error(ErrorCode::InvalidSpec, "dim-scan needs a candidate family");
  if (opt.count < 1 || opt.max_rounds < 1) throw Error(ErrorCode::InvalidSpec, "dim-scan needs count, rounds >= 1");
  const int n = m.dim();
  const std::size_t per_point = static_cast<std::size_t>(n + n * n);
  const int max_points = opt.count << opt.max_rounds;
  const auto samples = sample_points(n, max_points, opt.seed, opt.radius);

  DimScanResult res;
  res.columns = static_cast<int>(family.size());
  // dependent family members give null columns that are not new fields
  {
    std::vector<std::vector<double>> coeff;
    for (const auto& V : family) coeff.push_back(V.coefficients());
    double unused = 0.0;
    const auto csv = singular_values(coeff, coeff.front().size());
    res.family_rank = res.columns - nullity_of(csv, 1e-10, unused);
  }
  const int redundant = res.columns - res.family_rank;
  std::vector<std::vector<double>> cols(family.size());
  int have = 0;
  auto extend_to = [&](int points) {
    const auto more = constraint_columns(m, family, std::span(samples).subspan(static_cast<std::size_t>(have),
                                                                            static_cast<std::size_t>(points - have)),
                                         opt.order);
    for (std::size_t f = 0; f < family.size(); ++f) cols[f].insert(cols[f].end(), more[f].begin(), more[f].end());
    have = points;
  };

  int points = opt.count;
  extend_to(points);
  double thr = 0.0;
  auto sv = singular_values(cols, per_point * static_cast<std::size_t>(points));
  int prev = nullity_of(sv, opt.rel_threshold, thr) - redundant;
  res.nullity_history.push_back(prev);
  for (int round = 1; round <= opt.max_rounds; ++round) {
    points *= 2;
    extend_to(points);
    sv = singular_values(cols, per_point * static_cast<std::size_t>(points));
    const int cur = nullity_of(sv, opt.rel_threshold, thr) - redundant;
    res.nullity_history.push_back(cur);
    if (cur == prev) {
      res.singular_values = std::move(sv);
      res.nullity = cur;
      res.rows = static_cast<int>(per_point) * points;
      res.points = points;
      res.rounds = round;
      res.threshold = thr;
      return res;
    }
    prev = cur;
  }
  std::string hist;
  for (int v : res.nullity_history) hist += (hist.empty() ? "" : ", ") + std::to_string(v);
  throw Error(ErrorCode::RankDeficientSampling, "nullity kept changing with more points: " + hist);
}

}  // namespace finsler

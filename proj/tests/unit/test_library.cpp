#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "finsler/geometry.hpp"
#include "finsler/library.hpp"
#include "finsler/projective.hpp"
#include "finsler/randers.hpp"
#include "finsler/sampling.hpp"
#include "oracles.hpp"

using namespace finsler;

namespace {

int rank_of(const std::vector<PolyVectorField>& fields) {
  const auto first = fields.front().coefficients();
  Eigen::MatrixXd M(static_cast<Eigen::Index>(first.size()), static_cast<Eigen::Index>(fields.size()));
  for (std::size_t c = 0; c < fields.size(); ++c) {
    const auto v = fields[c].coefficients();
    for (std::size_t r = 0; r < v.size(); ++r) M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v[r];
  }
  return static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(M).rank());
}

TensorField alpha_metric(const RiemannianSpec& spec) {
  return [spec](std::span<const Jet> x, std::span<const Jet>) {
    JetTensor t(spec.n, "dd");
    const auto a = spec.a(x);
    for (std::size_t k = 0; k < a.size(); ++k) t[k] = a[k];
    return t;
  };
}

}  // namespace

TEST(Funk, Substitutions) {
  const auto m = funk({2});
  EXPECT_DOUBLE_EQ(m(std::vector<double>{0, 0}, std::vector<double>{0.6, 0.8}), 1.0);
  const auto ma = funk({2, 1, 1, {0.5, 0}});
  EXPECT_DOUBLE_EQ(ma(std::vector<double>{0, 0}, std::vector<double>{1, 0}), 1.5);
}

TEST(Funk, DirectFormulaMatchesAlphaPlusBeta) {
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      const std::vector<double> a = {0.5, 0.0};
      const auto m = funk({2, s1, s2, a});
      for (const auto& p : sample_points(2, 10, 1)) {
        JetContext ctx(p.x, p.y, 1);
        const auto z = ctx.lift_point();
        const std::span<const Jet> x(z.data(), 2), y(z.data() + 2, 2);
        const auto* rs = m.randers_structure();
        const double split = sqrt(alpha_squared(rs->alpha, x, y)).value() + beta_of(rs->beta, x, y).value();
        EXPECT_NEAR(m(p.x, p.y), split, 1e-12);
        EXPECT_NEAR(m(p.x, p.y), oracle::funk_F(p.x, p.y, s1, s2, a), 1e-12);
      }
    }
  const SamplePoint q{{0.5, 0}, {1, 0}};
  EXPECT_NEAR(funk({2})(q.x, q.y), oracle::funk_F(q.x, q.y, 1, 1, {}), 1e-15);
}

TEST(Funk, RandersConditionAndPositivity) {
  const auto m = funk({3, -1, -1, {0.5, 0, 0}});
  for (const auto& p : sample_points(3, 25, 2)) {
    LocalRanders r(*m.randers_structure(), p, 2);
    EXPECT_LT(r.beta_norm_sq().value(), 1.0);
    EXPECT_NO_THROW((void)fundamental_tensor(m, p));
  }
}

TEST(Funk, InvalidSpec) {
  for (const FunkSpec& s : {FunkSpec{2, 2, 1, {}}, FunkSpec{2, 1, 1, {0.9, 0.9}}, FunkSpec{2, 1, 1, {0.1}}}) {
    try {
      (void)funk(s);
      FAIL() << "expected InvalidSpec";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidSpec);
    }
  }
}

TEST(Klein, Substitutions) {
  const auto flat = klein({2, 0});
  const auto curved = klein({2, -1});
  JetContext ctx({0.4, 0.2}, {1, 0}, 1);
  const auto z = ctx.lift_point();
  const auto a0 = flat.a(std::span<const Jet>(z.data(), 2));
  EXPECT_EQ(a0[0].value(), 1.0);
  EXPECT_EQ(a0[1].value(), 0.0);
  JetContext origin({0, 0}, {1, 0}, 1);
  const auto zo = origin.lift_point();
  const auto a1 = curved.a(std::span<const Jet>(zo.data(), 2));
  EXPECT_EQ(a1[0].value(), 1.0);
  EXPECT_EQ(a1[1].value(), 0.0);
  EXPECT_EQ(a1[3].value(), 1.0);
  try {
    (void)klein({2, 1.0});
    FAIL() << "expected UnsupportedCurvature";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedCurvature);
  }
}

TEST(Klein, RicciOfThreeBall) {
  const auto m = space_form({3, -1});
  for (const auto& p : sample_points(3, 20, 3)) {
    const auto a = oracle::klein_a(p.x);
    double a2 = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a2 += a[i * 3 + j] * p.y[i] * p.y[j];
    EXPECT_NEAR(curvature(m, p).ric, -2 * a2, 1e-7 * std::max(1.0, a2));
  }
}

TEST(MinkowskiRanders, FlatAndS) {
  const auto zero = minkowski_randers(2, {0, 0});
  const auto m = minkowski_randers(2, {0.5, 0});
  const auto vol = VolumeForm::busemann_hausdorff(m);
  for (const auto& p : sample_points(2, 5, 4)) {
    EXPECT_DOUBLE_EQ(zero(p.x, p.y), std::hypot(p.y[0], p.y[1]));
    EXPECT_NEAR(s_curvature(m, p, vol), 0.0, 1e-14);
  }
  try {
    (void)minkowski_randers(2, {0.8, 0.8});
    FAIL() << "expected InvalidSpec";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidSpec);
  }
}

TEST(KillingBasis, CountsAndIndependence) {
  EXPECT_EQ(killing_basis({2, 0}).size(), 3u);
  EXPECT_EQ(killing_basis({2, -1}).size(), 3u);
  EXPECT_EQ(killing_basis({3, -1}).size(), 6u);
  EXPECT_EQ(rank_of(killing_basis({3, -1})), 6);
  // translation-type fields of the curved model carry the quadratic correction
  const auto t = killing_basis({2, -1})[0];
  EXPECT_EQ(t.degree(), 2);
  EXPECT_EQ(killing_basis({2, 0})[0].degree(), 0);
}

TEST(KillingBasis, KillingResidual) {
  for (double k : {0.0, -1.0}) {
    const auto spec = klein({3, k});
    for (const auto& V : killing_basis({3, k})) {
      for (const auto& p : sample_points(3, 5, 5)) EXPECT_LT(max_abs(lie_tensor(V, alpha_metric(spec), p)), 1e-8) << V.name();
    }
  }
}

TEST(FlatProjectiveBasis, CountsAndIndependence) {
  EXPECT_EQ(flat_projective_basis(2).size(), 8u);
  EXPECT_EQ(flat_projective_basis(3).size(), 15u);
  EXPECT_EQ(rank_of(flat_projective_basis(3)), 15);
}

TEST(FlatProjectiveBasis, ProjectiveOnProjectivelyFlatModels) {
  const std::vector<MetricModel> ms = {euclidean(3), space_form({3, -1}), funk({3})};
  for (const auto& m : ms) {
    for (const auto& V : flat_projective_basis(3)) {
      for (const auto& p : sample_points(3, 3, 6)) {
        EXPECT_LT(extract_factor(lie_spray(V, m, p).data(), p.y).residual, 1e-6) << m.name() << " " << V.name();
      }
    }
  }
}

// Rotations x^j e_i - x^i e_j lie in the span of the Killing basis of the Klein model.
TEST(FlatProjectiveBasis, RotationsInsideKillingSpan) {
  const int n = 3;
  const auto kill = killing_basis({n, -1});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<double> A(static_cast<std::size_t>(n * n), 0.0);
      A[static_cast<std::size_t>(i * n + j)] = 1.0;
      A[static_cast<std::size_t>(j * n + i)] = -1.0;
      auto with = kill;
      with.emplace_back(n, std::vector<double>{}, A, std::vector<double>{});
      EXPECT_EQ(rank_of(with), static_cast<int>(kill.size()));
    }
}

TEST(RandomRanders, DeterministicAndValid) {
  const auto a = random_randers_spec(3, 17);
  const auto b = random_randers_spec(3, 17);
  ASSERT_EQ(a.a.size(), 9u);
  for (std::size_t k = 0; k < a.b.size(); ++k) {
    ASSERT_EQ(a.b[k].terms().size(), b.b[k].terms().size());
    for (std::size_t t = 0; t < a.b[k].terms().size(); ++t) EXPECT_EQ(a.b[k].terms()[t].coeff, b.b[k].terms()[t].coeff);
    EXPECT_LE(a.b[k].degree(), 2);
  }
  const auto m = polynomial_randers("r", a);
  for (const auto& p : sample_points(3, 25, 7)) {
    LocalRanders r(*m.randers_structure(), p, 2);
    EXPECT_LT(r.beta_norm_sq().value(), 0.64);
  }
}

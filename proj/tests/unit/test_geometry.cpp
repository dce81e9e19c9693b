#include <gtest/gtest.h>

#include "finsler/geometry.hpp"
#include "finsler/library.hpp"
#include "finsler/randers.hpp"
#include "finsler/sampling.hpp"
#include "oracles.hpp"

using namespace finsler;

namespace {

double alpha_sq(const std::vector<double>& a, const std::vector<double>& y) {
  const std::size_t n = y.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * y[i] * y[j];
  return s;
}

SamplePoint pt(std::vector<double> x, std::vector<double> y) { return {std::move(x), std::move(y)}; }

}  // namespace

TEST(FundamentalTensor, EuclideanIsIdentity) {
  const auto m = euclidean(3);
  for (const auto& p : sample_points(3, 5, 1)) {
    const auto g = fundamental_tensor(m, p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(g(i, j), i == j ? 1.0 : 0.0, 1e-14);
  }
}

TEST(FundamentalTensor, FunkAtOrigin) {
  const auto g = fundamental_tensor(funk({2}), pt({0, 0}, {0.6, -0.8}));
  EXPECT_NEAR(g(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(g(0, 1), 0.0, 1e-14);
  EXPECT_NEAR(g(1, 1), 1.0, 1e-14);
}

// Second y-differences of F^2/2 for F = |y| + <b, y>.
TEST(FundamentalTensor, MinkowskiRandersMatchesDifferences) {
  const std::vector<double> b = {0.3, -0.4};
  const auto m = minkowski_randers(2, b);
  const auto p = pt({0.1, 0.2}, {0.8, 0.5});
  const oracle::Fn half_f2 = [&](const std::vector<double>& y) {
    const double F = std::hypot(y[0], y[1]) + b[0] * y[0] + b[1] * y[1];
    return 0.5 * F * F;
  };
  const auto g = fundamental_tensor(m, p);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(g(i, j), oracle::d2(half_f2, p.y, i, j), 1e-6);
}

TEST(FundamentalTensor, NotPositiveDefinite) {
  const auto m = MetricModel::generic("indefinite", ScalarField(2, [](std::span<const Jet>, std::span<const Jet> y) {
    return sqrt(y[0] * y[0] - 0.5 * y[1] * y[1]);
  }));
  try {
    (void)fundamental_tensor(m, pt({0, 0}, {1, 0.1}));
    FAIL() << "expected NotPositiveDefinite";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
  }
}

TEST(Spray, VanishesOnFlatModels) {
  for (const auto& m : {euclidean(2), minkowski_randers(2, {0.5, 0.1})}) {
    for (const auto& p : sample_points(2, 5, 2)) EXPECT_LT(max_abs(spray(m, p)), 1e-14);
  }
}

TEST(Spray, FunkMatchesClosedForm) {
  const auto m = funk({2});
  const auto p = pt({0.1, 0}, {1, 0});
  EXPECT_LT(max_abs_diff(spray(m, p), spray_randers(*m.randers_structure(), p)), 1e-12);
}

TEST(Spray, HomogeneousOfDegreeTwo) {
  const std::vector<MetricModel> ms = {funk({2, 1, 1, {0.5, 0}}), space_form({2, -1}),
                                       polynomial_randers("r", random_randers_spec(2, 3))};
  for (const auto& m : ms) {
    for (const auto& p : sample_points(2, 5, 3)) {
      const auto G = spray(m, p);
      for (double lam : {0.5, 2.0, 3.0}) {
        SamplePoint q = p;
        for (auto& v : q.y) v *= lam;
        const auto Gl = spray(m, q);
        for (int i = 0; i < 2; ++i) EXPECT_NEAR(Gl(i), lam * lam * G(i), 1e-9 * std::max(1.0, std::abs(Gl(i))));
      }
    }
  }
}

TEST(Berwald, ContractionLadderOnFunk) {
  const auto m = funk({3, 1, 1, {0.5, 0, 0}});
  for (const auto& p : sample_points(3, 20, 4)) {
    const auto G = spray(m, p);
    const auto B = berwald(m, p);
    for (int i = 0; i < 3; ++i) {
      double c = 0.0;
      for (int k = 0; k < 3; ++k) c += B.connection(i, k) * p.y[static_cast<std::size_t>(k)];
      EXPECT_NEAR(c, 2 * G(i), 1e-9);
      for (int k = 0; k < 3; ++k) {
        double d = 0.0;
        for (int j = 0; j < 3; ++j) d += B.coefficients(i, j, k) * p.y[static_cast<std::size_t>(j)];
        EXPECT_NEAR(d, B.connection(i, k), 1e-9);
        for (int j = 0; j < 3; ++j) EXPECT_EQ(B.coefficients(i, j, k), B.coefficients(i, k, j));
      }
    }
  }
}

TEST(Berwald, KleinCoefficientsIndependentOfY) {
  const auto m = space_form({2, -1});
  const auto a = berwald(m, pt({0.3, -0.2}, {1, 0.4})).coefficients;
  const auto b = berwald(m, pt({0.3, -0.2}, {-0.3, 0.9})).coefficients;
  EXPECT_LT(max_abs_diff(a, b), 1e-12);
}

TEST(Horizontal, CoordinateFunctionAndFiberFunction) {
  const auto m = euclidean(2);
  const auto p = pt({0.2, 0.1}, {0.3, 0.4});
  ScalarField x1(2, [](std::span<const Jet> x, std::span<const Jet>) { return x[0]; });
  ScalarField fy(2, [](std::span<const Jet>, std::span<const Jet> y) { return y[0] * y[1]; });
  EXPECT_DOUBLE_EQ(horizontal(x1, m, p, 0), 1.0);
  EXPECT_DOUBLE_EQ(horizontal(x1, m, p, 1), 0.0);
  EXPECT_DOUBLE_EQ(horizontal(fy, m, p, 0), 0.0);
}

TEST(Horizontal, AnnihilatesF) {
  const std::vector<MetricModel> ms = {funk({2, -1, -1, {0.5, 0}}), space_form({3, -1}),
                                       polynomial_randers("r", random_randers_spec(3, 4))};
  for (const auto& m : ms) {
    for (const auto& p : sample_points(m.dim(), 5, 5)) {
      for (int k = 0; k < m.dim(); ++k) EXPECT_LT(std::abs(horizontal(m.F(), m, p, k)), 1e-8) << m.name();
    }
  }
}

TEST(CovDeriv, MetricCompatibilityOnKlein) {
  const auto m = space_form({2, -1});
  const auto p = pt({0.2, 0.3}, {0.6, 0.8});
  LocalGeometry geo(m, p, 4);
  const auto dg = geo.cov_deriv(geo.fundamental_tensor());
  EXPECT_LT(max_abs(values(dg)), 1e-8);
}

TEST(CovDeriv, ConstantOneFormOnEuclidean) {
  TensorField w = [](std::span<const Jet> x, std::span<const Jet>) {
    JetTensor t(2, "d");
    t(0) = x[0] * 0.0 + 1.5;
    t(1) = x[0] * 0.0 - 2.0;
    return t;
  };
  EXPECT_EQ(max_abs(cov_deriv(w, euclidean(2), pt({0.1, 0.1}, {1, 0}))), 0.0);
}

TEST(CovDeriv, ScalarReducesToHorizontal) {
  const auto m = funk({2});
  const auto p = pt({0.2, -0.1}, {0.3, 0.7});
  TensorField f = [&](std::span<const Jet> x, std::span<const Jet> y) {
    JetTensor t(2, "");
    t[0] = x[0] * y[1] + y[0] * y[0];
    return t;
  };
  ScalarField s(2, [](std::span<const Jet> x, std::span<const Jet> y) { return x[0] * y[1] + y[0] * y[0]; });
  const auto c = cov_deriv(f, m, p);
  for (int k = 0; k < 2; ++k) EXPECT_NEAR(c(k), horizontal(s, m, p, k), 1e-13);
}

TEST(Curvature, EuclideanVanishes) {
  const auto c = curvature(euclidean(3), pt({0.1, 0.2, 0.3}, {1, 0, 0}));
  EXPECT_EQ(max_abs(c.R), 0.0);
  EXPECT_EQ(max_abs(c.K4), 0.0);
  EXPECT_EQ(c.ric, 0.0);
  EXPECT_EQ(max_abs(c.Rskew), 0.0);
}

TEST(Curvature, KleinSpaceFormFormulas) {
  for (int n : {2, 3}) {
    const auto m = space_form({n, -1});
    for (const auto& p : sample_points(n, 20, 6)) {
      const auto a = oracle::klein_a(p.x);
      const double a2 = alpha_sq(a, p.y);
      const auto c = curvature(m, p);
      const std::size_t un = static_cast<std::size_t>(n);
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
          double yk = 0.0;
          for (std::size_t j = 0; j < un; ++j) yk += a[static_cast<std::size_t>(k) * un + j] * p.y[j];
          const double expect = -((i == k ? a2 : 0.0) - p.y[static_cast<std::size_t>(i)] * yk);
          EXPECT_NEAR(c.R(i, k), expect, 1e-8 * std::max(1.0, a2));
        }
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              const double expect = -((i == k ? a[static_cast<std::size_t>(j * n + l)] : 0.0) -
                                      (i == l ? a[static_cast<std::size_t>(j * n + k)] : 0.0));
              EXPECT_NEAR(c.K4(i, j, k, l), expect, 1e-7);
            }
      EXPECT_NEAR(c.ric, -(n - 1) * a2, 1e-8 * std::max(1.0, a2));
      EXPECT_LT(max_abs(c.Rskew), 1e-9);
    }
  }
}

// Riemann tensor of the Klein metric from Christoffel symbols, with the
// metric derivatives taken by jets of a_ij alone.
TEST(Curvature, KleinAgreesWithChristoffelPath) {
  const int n = 3;
  const auto spec = klein({n, -1});
  const auto m = space_form({n, -1});
  for (const auto& p : sample_points(n, 5, 7)) {
    JetContext ctx(p.x, p.y, 3);
    const auto z = ctx.lift_point();
    const auto a = spec.a(std::span<const Jet>(z.data(), 3));
    auto A = [&](int i, int j) -> const Jet& { return a[static_cast<std::size_t>(i * n + j)]; };
    // inverse of a by the closed form of the Klein model is avoided: use 3x3 cofactors on jets
    std::vector<Jet> inv(9);
    const Jet det = A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) - A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
                    A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        inv[static_cast<std::size_t>(i * 3 + j)] = (A(r0, c0) * A(r1, c1) - A(r0, c1) * A(r1, c0)) / det;
      }
    // Gamma^i_jk as jets (order 2 left).
    std::vector<Jet> gam(27, ctx.constant(0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Jet s = ctx.constant(0.0);
          for (int l = 0; l < n; ++l)
            s += inv[static_cast<std::size_t>(i * n + l)] * (A(l, k).diff(j) + A(l, j).diff(k) - A(j, k).diff(l));
          gam[static_cast<std::size_t>((i * n + j) * n + k)] = 0.5 * s;
        }
    auto G = [&](int i, int j, int k) -> const Jet& { return gam[static_cast<std::size_t>((i * n + j) * n + k)]; };
    const auto K4 = berwald_riemann(m, p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double r = G(i, l, j).diff(k).value() - G(i, k, j).diff(l).value();
            for (int q = 0; q < n; ++q) r += G(i, k, q).value() * G(q, l, j).value() - G(i, l, q).value() * G(q, k, j).value();
            EXPECT_NEAR(K4(i, j, k, l), r, 1e-8);
          }
  }
}

TEST(Curvature, FunkConstantRicciAndStructure) {
  for (int n : {2, 3}) {
    const auto m = funk({n, 1, 1, {}});
    for (const auto& p : sample_points(n, 10, 8)) {
      const double F = m(p.x, p.y);
      const auto c = curvature(m, p);
      EXPECT_NEAR(c.ric, -(n - 1) * F * F / 4.0, 1e-8 * F * F);
      for (int i = 0; i < n; ++i) {
        double ry = 0.0;
        for (int k = 0; k < n; ++k) ry += c.R(i, k) * p.y[static_cast<std::size_t>(k)];
        EXPECT_NEAR(ry, 0.0, 1e-8);
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) EXPECT_NEAR(c.K4(i, j, k, l), -c.K4(i, j, l, k), 1e-9);
      double trace = 0.0;
      for (int i = 0; i < n; ++i) trace += c.R(i, i);
      EXPECT_DOUBLE_EQ(c.ric, trace);
    }
  }
}

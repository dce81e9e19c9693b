#include <gtest/gtest.h>

#include <random>

#include "finsler/error.hpp"
#include "finsler/jet.hpp"
#include "finsler/library.hpp"
#include "finsler/sampling.hpp"
#include "finsler/scalar_field.hpp"
#include "oracles.hpp"

using namespace finsler;

namespace {

std::vector<int> e(int vars, std::initializer_list<std::pair<int, int>> entries) {
  std::vector<int> a(static_cast<std::size_t>(vars), 0);
  for (auto [v, k] : entries) a[static_cast<std::size_t>(v)] = k;
  return a;
}

Jet eval_poly(const oracle::Poly& p, std::span<const Jet> z) {
  Jet s = z[0] * 0.0;
  for (const auto& [ex, c] : p.terms) {
    Jet m = s * 0.0 + c;
    for (std::size_t v = 0; v < ex.size(); ++v) {
      for (int k = 0; k < ex[v]; ++k) m = m * z[v];
    }
    s += m;
  }
  return s;
}

}  // namespace

TEST(LiftPoint, SeedsCoordinates) {
  JetContext ctx({2.0}, {3.0}, 3);
  const auto v = ctx.lift_point();
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].value(), 2.0);
  EXPECT_EQ(v[0].coefficient(e(2, {{0, 1}})), 1.0);
  EXPECT_EQ(v[0].coefficient(e(2, {{1, 1}})), 0.0);
  EXPECT_EQ(v[0].coefficient(e(2, {{0, 2}})), 0.0);
  EXPECT_EQ(v[1].value(), 3.0);
}

TEST(LiftPoint, CountAndSubstitution) {
  JetContext ctx({0.0, 0.0}, {3.0, 4.0});
  const auto v = ctx.lift_point();
  EXPECT_EQ(v.size(), 4u);
  EXPECT_EQ(v[3].value(), 4.0);
}

TEST(JetArith, SquareOfVariable) {
  JetContext ctx({3.0}, {1.0}, 4);
  const auto v = ctx.lift_point();
  const Jet sq = jet_arith(v[0], v[0], ArithOp::mul);
  EXPECT_EQ(sq.value(), 9.0);
  EXPECT_EQ(sq.coefficient(e(2, {{0, 1}})), 6.0);
  EXPECT_EQ(sq.coefficient(e(2, {{0, 2}})), 1.0);
  EXPECT_EQ(sq.derivative(e(2, {{0, 2}})), 2.0);
  EXPECT_EQ(sq.coefficient(e(2, {{0, 3}})), 0.0);
}

TEST(JetArith, Reciprocal) {
  JetContext ctx({0.0}, {2.0}, 4);
  const auto v = ctx.lift_point();
  const Jet r = jet_arith(ctx.constant(1.0), v[1], ArithOp::div);
  EXPECT_DOUBLE_EQ(r.value(), 0.5);
  EXPECT_DOUBLE_EQ(r.coefficient(e(2, {{1, 1}})), -0.25);
  EXPECT_DOUBLE_EQ(r.coefficient(e(2, {{1, 2}})), 0.125);
}

TEST(JetArith, DivisionByZeroValue) {
  JetContext ctx({0.0}, {1.0}, 2);
  const auto v = ctx.lift_point();
  try {
    (void)(v[1] / v[0]);
    FAIL() << "expected an error";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::DivisionByZeroValue);
  }
}

TEST(JetArith, ProductRuleMatchesSymbolicExpansion) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = oracle::random_poly(4, 3, rng);
    const auto q = oracle::random_poly(4, 3, rng);
    const auto pq = p * q;
    std::uniform_real_distribution<double> u(-1, 1);
    const std::vector<double> z0 = {u(rng), u(rng), u(rng), u(rng)};
    JetContext ctx({z0[0], z0[1]}, {z0[2], z0[3]}, 6);
    const auto z = ctx.lift_point();
    const Jet prod = eval_poly(p, z) * eval_poly(q, z);
    const auto& tab = *ctx.table();
    for (std::size_t m = 0; m < tab.size(6); ++m) {
      const auto ex = tab.exponents(m);
      std::vector<int> alpha(ex.begin(), ex.end());
      EXPECT_NEAR(prod.coefficient(alpha), pq.taylor(z0, alpha), 1e-11);
    }
  }
}

TEST(JetFunc, SqrtOfConstant) {
  JetContext ctx({0.0}, {1.0}, 3);
  const Jet r = jet_func(ctx.constant(25.0), JetFunction::sqrt);
  EXPECT_DOUBLE_EQ(r.value(), 5.0);
  for (std::size_t m = 1; m < r.coefficients().size(); ++m) EXPECT_EQ(r.coefficients()[m], 0.0);
}

TEST(JetFunc, EuclideanNormGradient) {
  JetContext ctx({0.0, 0.0}, {3.0, 4.0}, 2);
  const auto v = ctx.lift_point();
  const Jet r = jet_func(v[2] * v[2] + v[3] * v[3], JetFunction::sqrt);
  EXPECT_DOUBLE_EQ(r.value(), 5.0);
  EXPECT_DOUBLE_EQ(r.derivative(e(4, {{2, 1}})), 0.6);
}

TEST(JetFunc, DomainError) {
  JetContext ctx({0.0}, {-1.0}, 2);
  const auto v = ctx.lift_point();
  for (auto f : {JetFunction::sqrt, JetFunction::ln}) {
    try {
      (void)jet_func(v[1], f);
      FAIL() << "expected DomainError";
    } catch (const Error& err) {
      EXPECT_EQ(err.code(), ErrorCode::DomainError);
    }
  }
}

// ln u for a polynomial u against hand-derived derivatives: orders 1 and 2
// by central differences of ln u, order 3 by differencing the closed-form
// second derivative u''/u - u'^2/u^2.
TEST(JetFunc, LogMatchesFiniteDifferences) {
  std::mt19937_64 rng(5);
  auto u = oracle::random_poly(2, 3, rng);
  u.terms[{0, 0}] = 3.0;  // keep u positive near the base point
  const std::vector<double> z0 = {0.2, -0.3};
  JetContext ctx({z0[0]}, {z0[1]}, 3);
  const auto z = ctx.lift_point();
  const Jet L = jet_func(eval_poly(u, z), JetFunction::ln);
  const oracle::Fn lnu = [&](const std::vector<double>& w) { return std::log(u(w)); };
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(L.derivative(e(2, {{i, 1}})), oracle::d1(lnu, z0, i), 1e-6);
    for (int j = 0; j < 2; ++j) {
      auto a = e(2, {{i, 1}});
      ++a[static_cast<std::size_t>(j)];
      EXPECT_NEAR(L.derivative(a), oracle::d2(lnu, z0, i, j), 1e-6);
    }
  }
  const oracle::Fn second00 = [&](const std::vector<double>& w) {
    const double du = oracle::d1([&](const std::vector<double>& q) { return u(q); }, w, 0, 1e-3);
    const double ddu = oracle::d2([&](const std::vector<double>& q) { return u(q); }, w, 0, 0, 1e-3);
    return ddu / u(w) - du * du / (u(w) * u(w));
  };
  // u is cubic, so the inner differences with step 1e-3 are exact up to rounding in u'' and O(h^2) in u'.
  EXPECT_NEAR(L.derivative(e(2, {{0, 3}})), oracle::d1(second00, z0, 0, 1e-3), 1e-5);
}

TEST(JetFunc, PowMatchesSqrt) {
  JetContext ctx({0.3}, {1.7}, 5);
  const auto v = ctx.lift_point();
  const Jet base = v[0] * v[0] + v[1] * v[1] + 1.0;
  const Jet a = jet_func(base, JetFunction::pow, 0.5);
  const Jet b = jet_func(base, JetFunction::sqrt);
  for (std::size_t m = 0; m < a.coefficients().size(); ++m) EXPECT_NEAR(a.coefficients()[m], b.coefficients()[m], 1e-13);
}

TEST(Partial, NormAndProduct) {
  ScalarField norm(2, [](std::span<const Jet>, std::span<const Jet> y) { return sqrt(y[0] * y[0] + y[1] * y[1]); });
  JetContext ctx({0.0, 0.0}, {3.0, 4.0}, 3);
  EXPECT_DOUBLE_EQ(partial(norm, ctx, e(4, {{2, 1}})), 0.6);
  ScalarField xy(1, [](std::span<const Jet> x, std::span<const Jet> y) { return x[0] * y[0]; });
  JetContext c1({0.4}, {0.7}, 2);
  EXPECT_DOUBLE_EQ(partial(xy, c1, e(2, {{0, 1}, {1, 1}})), 1.0);
}

TEST(Partial, OrderExceeded) {
  ScalarField xy(1, [](std::span<const Jet> x, std::span<const Jet> y) { return x[0] * y[0]; });
  JetContext ctx({0.4}, {0.7}, 2);
  try {
    (void)partial(xy, ctx, e(2, {{0, 2}, {1, 1}}));
    FAIL() << "expected OrderExceeded";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::OrderExceeded);
  }
}

TEST(Partial, EulerIdentityOnBuiltins) {
  const std::vector<MetricModel> metrics = {euclidean(3), funk({3, 1, 1, {0.5, 0, 0}}), space_form({3, -1.0}),
                                            minkowski_randers(3, {0.3, -0.2, 0.1}),
                                            polynomial_randers("r", random_randers_spec(3, 2))};
  const auto pts = sample_points(3, 20, 9);
  for (const auto& m : metrics) {
    for (const auto& p : pts) {
      JetContext ctx(p.x, p.y, 1);
      double s = 0.0;
      for (int i = 0; i < 3; ++i) s += p.y[static_cast<std::size_t>(i)] * partial(m.F(), ctx, e(6, {{3 + i, 1}}));
      EXPECT_NEAR(s, m(p.x, p.y), 1e-10) << m.name();
    }
  }
}

// Mixed partials are read from one storage cell whatever the order of differentiation.
TEST(Partial, PermutationsShareStorage) {
  const auto m = funk({2, 1, -1, {0.2, 0.1}});
  const auto p = sample_points(2, 1, 4)[0];
  JetContext ctx(p.x, p.y, 4);
  const std::vector<std::vector<int>> seqs = {{0, 2, 3, 1}, {3, 1, 0, 2}, {2, 0, 1, 3}, {1, 3, 2, 0}};
  const double ref = partial_sequence(m.F(), ctx, seqs[0]);
  for (const auto& s : seqs) EXPECT_EQ(partial_sequence(m.F(), ctx, s), ref);
}

TEST(Jet, DiffLowersOrder) {
  JetContext ctx({0.1}, {0.5}, 4);
  const auto v = ctx.lift_point();
  const Jet f = v[0] * v[0] * v[1];
  const Jet d = f.diff(0);
  EXPECT_EQ(d.order(), 3);
  EXPECT_DOUBLE_EQ(d.value(), 2 * 0.1 * 0.5);
}

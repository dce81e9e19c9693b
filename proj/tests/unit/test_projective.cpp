#include <gtest/gtest.h>

#include <random>

#include "finsler/invariants.hpp"
#include "finsler/library.hpp"
#include "finsler/projective.hpp"
#include "finsler/randers.hpp"
#include "finsler/sampling.hpp"
#include "finsler/s_quantities.hpp"

using namespace finsler;

namespace {

SamplePoint pt(std::vector<double> x, std::vector<double> y) { return {std::move(x), std::move(y)}; }

/// V^i = x^i <c, x>.
PolyVectorField radial_quadratic(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size());
  std::vector<double> C(static_cast<std::size_t>(n * n * n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double v = 0.0;
        if (i == j) v += 0.5 * c[static_cast<std::size_t>(k)];
        if (i == k) v += 0.5 * c[static_cast<std::size_t>(j)];
        C[static_cast<std::size_t>((i * n + j) * n + k)] = v;
      }
  return PolyVectorField(n, {}, {}, C, "x<c,x>");
}

PolyVectorField rotation2() { return PolyVectorField(2, {}, {0, -1, 1, 0}, {}, "rotation"); }

PolyVectorField random_quadratic(int n, std::mt19937_64& rng, const std::string& name) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> b(static_cast<std::size_t>(n)), A(static_cast<std::size_t>(n * n)), C(static_cast<std::size_t>(n * n * n));
  for (auto& v : b) v = u(rng);
  for (auto& v : A) v = u(rng);
  for (auto& v : C) v = u(rng);
  return PolyVectorField(n, b, A, C, name);
}

}  // namespace

TEST(CompleteLift, ConstantFieldHasNoFiberPart) {
  JetContext ctx({0.1, 0.2}, {0.3, 0.4}, 2);
  const auto z = ctx.lift_point();
  CompleteLift L(PolyVectorField(2, {1.0, -2.0}, {}, {}), std::span<const Jet>(z.data(), 2), std::span<const Jet>(z.data() + 2, 2));
  EXPECT_EQ(L.apply(z[2]).value(), 0.0);
  EXPECT_EQ(L.apply(z[0]).value(), 1.0);
  EXPECT_EQ(L.apply(z[1]).value(), -2.0);
}

TEST(CompleteLift, RotationLiftsLinearly) {
  JetContext ctx({0.1, 0.2}, {0.3, 0.4}, 2);
  const auto z = ctx.lift_point();
  CompleteLift L(rotation2(), std::span<const Jet>(z.data(), 2), std::span<const Jet>(z.data() + 2, 2));
  EXPECT_DOUBLE_EQ(L.apply(z[2]).value(), -0.4);
  EXPECT_DOUBLE_EQ(L.apply(z[3]).value(), 0.3);
}

// d/dy^1 (V^ f) = V^(d/dy^1 f) + dV^i/dx^1 d/dy^i f
TEST(CompleteLift, FiberDerivativeCommutator) {
  JetContext ctx({0.3, -0.2}, {0.5, 0.9}, 4);
  const auto z = ctx.lift_point();
  std::mt19937_64 rng(3);
  const auto V = random_quadratic(2, rng, "v");
  CompleteLift L(V, std::span<const Jet>(z.data(), 2), std::span<const Jet>(z.data() + 2, 2));
  for (const Jet& f : {z[0] * z[2], z[0] * z[1] * z[2] * z[3] + z[2] * z[2] * z[1]}) {
    const auto& J = L.jacobian();
    const double extra = J[0].value() * f.diff(2).value() + J[2].value() * f.diff(3).value();
    EXPECT_NEAR(L.apply(f).diff(2).value(), L.apply(f.diff(2)).value() + extra, 1e-14);
  }
}

TEST(LieSpray, AffineFieldOnEuclidean) {
  const PolyVectorField V(2, {0.5, 1.0}, {1, 2, -3, 0.5}, {});
  EXPECT_EQ(max_abs(lie_spray(V, euclidean(2), pt({0.1, 0.2}, {1, 0.3}))), 0.0);
}

TEST(LieSpray, RadialQuadraticOnEuclidean) {
  const std::vector<double> c = {0.7, -0.4};
  const auto p = pt({0.2, 0.5}, {0.3, -0.8});
  const auto LG = lie_spray(radial_quadratic(c), euclidean(2), p);
  const double cy = c[0] * p.y[0] + c[1] * p.y[1];
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(LG(i), cy * p.y[static_cast<std::size_t>(i)], 1e-15);
}

TEST(LieSpray, FlatBasisProportionalOnFunk) {
  const auto m = funk({2, 1, 1, {0.5, 0}});
  for (const auto& V : flat_projective_basis(2)) {
    for (const auto& p : sample_points(2, 5, 1)) {
      const auto LG = lie_spray(V, m, p);
      EXPECT_LT(extract_factor(LG.data(), p.y).residual, 1e-7) << V.name();
    }
  }
}

TEST(ExtractFactor, Examples) {
  const std::vector<double> y = {0.6, 0.8};
  const std::vector<double> two_y = {1.2, 1.6};
  const auto f = extract_factor(two_y, y);
  EXPECT_DOUBLE_EQ(f.P, 2.0);
  EXPECT_EQ(f.residual, 0.0);
  const std::vector<double> e1 = {1, 0};
  const std::vector<double> orth = {0, -1};
  const auto g = extract_factor(orth, e1);
  EXPECT_EQ(g.P, 0.0);
  EXPECT_DOUBLE_EQ(g.residual, 1.0);
  try {
    (void)extract_factor(orth, e1, true);
    FAIL() << "expected NotProjective";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotProjective);
  }
}

// P = eta + L(S/(n+1) + rho_0), eta being the projective factor of V for alpha.
TEST(ExtractFactor, FunkFactorSplitsThroughAlpha) {
  const int n = 2;
  const auto m = funk({n, 1, 1, {0.5, 0}});
  const auto* rs = m.randers_structure();
  const auto alpha = MetricModel::riemannian("alpha", rs->alpha);
  const auto vol = VolumeForm::busemann_hausdorff(m);
  for (const auto& V : flat_projective_basis(n)) {
    for (const auto& p : sample_points(n, 3, 2)) {
      const auto fd = factor_data(V, m, p);
      const auto LGa = lie_spray(V, alpha, p);
      const double eta = extract_factor(LGa.data(), p.y).P;
      LocalGeometry geo(m, p, 5);
      SCurvatureField sq(geo, vol);
      LocalRanders r(*rs, geo.x(), geo.y());
      CompleteLift L(V, geo.x(), geo.y());
      const double lie = L.apply(sq.S() / double(n + 1) + r.rho0()).value();
      EXPECT_NEAR(fd.P, eta + lie, 1e-6) << V.name();
      // y^i P_i = P and P_ij symmetric
      double yp = 0.0;
      for (int i = 0; i < n; ++i) yp += p.y[static_cast<std::size_t>(i)] * fd.P_i(i);
      EXPECT_NEAR(yp, fd.P, 1e-8);
      EXPECT_NEAR(fd.P_ij(0, 1), fd.P_ij(1, 0), 1e-10);
    }
  }
}

TEST(LieTensor, ConstantTensorUnderTranslation) {
  TensorField T = [](std::span<const Jet> x, std::span<const Jet>) {
    JetTensor t(2, "ud");
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = x[0] * 0.0 + double(k + 1);
    return t;
  };
  EXPECT_EQ(max_abs(lie_tensor(PolyVectorField(2, {1, 1}, {}, {}), T, pt({0.1, 0.1}, {1, 0}))), 0.0);
}

TEST(LieTensor, RotationIsKillingForEuclidean) {
  TensorField a = [](std::span<const Jet> x, std::span<const Jet>) {
    JetTensor t(2, "dd");
    t(0, 0) = x[0] * 0.0 + 1.0;
    t(1, 1) = x[0] * 0.0 + 1.0;
    t(0, 1) = x[0] * 0.0;
    t(1, 0) = x[0] * 0.0;
    return t;
  };
  EXPECT_LT(max_abs(lie_tensor(rotation2(), a, pt({0.3, 0.4}, {1, 2}))), 1e-15);
}

TEST(LieTensor, LeibnizOnProducts) {
  std::mt19937_64 rng(8);
  const auto V = random_quadratic(2, rng, "v");
  TensorField f = [](std::span<const Jet> x, std::span<const Jet> y) {
    JetTensor t(2, "d");
    t(0) = x[0] * y[1] + y[0];
    t(1) = x[1] * x[0] * y[0];
    return t;
  };
  TensorField g = [](std::span<const Jet> x, std::span<const Jet> y) {
    JetTensor t(2, "u");
    t(0) = x[1] + y[0] * y[1];
    t(1) = x[0] * x[0] + y[1];
    return t;
  };
  TensorField fg = [&](std::span<const Jet> x, std::span<const Jet> y) {
    const auto a = f(x, y), b = g(x, y);
    JetTensor t(2, "");
    t[0] = a(0) * b(0) + a(1) * b(1);
    return t;
  };
  const auto p = pt({0.2, -0.3}, {0.5, 0.4});
  const auto Lf = lie_tensor(V, f, p), Lg = lie_tensor(V, g, p), Lfg = lie_tensor(V, fg, p);
  JetContext ctx(p.x, p.y, 1);
  const auto z = ctx.lift_point();
  const auto fv = values(f(std::span<const Jet>(z.data(), 2), std::span<const Jet>(z.data() + 2, 2)));
  const auto gv = values(g(std::span<const Jet>(z.data(), 2), std::span<const Jet>(z.data() + 2, 2)));
  double rhs = 0.0;
  for (int i = 0; i < 2; ++i) rhs += Lf(i) * gv(i) + fv(i) * Lg(i);
  EXPECT_NEAR(Lfg[0], rhs, 1e-13);
}

TEST(LieTensor, UnsupportedVariance) {
  TensorField T = [](std::span<const Jet> x, std::span<const Jet>) {
    JetTensor t(2, "ddddd");
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = x[0] * 0.0;
    return t;
  };
  try {
    (void)lie_tensor(rotation2(), T, pt({0, 0}, {1, 0}));
    FAIL() << "expected UnsupportedVariance";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedVariance);
  }
}

TEST(Classify, RotationOnEuclidean) {
  const auto r = classify(rotation2(), euclidean(2), sample_points(2, 10, 1));
  EXPECT_TRUE(r.alpha_available);
  EXPECT_TRUE(r.flags.killing_alpha);
  EXPECT_TRUE(r.flags.killing_F);
  EXPECT_TRUE(r.flags.affine);
  EXPECT_TRUE(r.flags.projective);
  EXPECT_TRUE(r.flags.special);
  EXPECT_TRUE(r.flags.c_projective);
}

TEST(Classify, RadialQuadraticOnEuclidean) {
  const auto r = classify(radial_quadratic({0.5, -1.0}), euclidean(2), sample_points(2, 10, 2));
  EXPECT_TRUE(r.flags.projective);
  EXPECT_TRUE(r.flags.special);
  EXPECT_TRUE(r.flags.c_projective);
  EXPECT_FALSE(r.flags.affine);
  EXPECT_FALSE(r.flags.killing_alpha);
  ASSERT_TRUE(r.factor.has_value());
  EXPECT_LT(max_abs(r.factor->P_cov), 1e-12);
}

TEST(Classify, FlatBasisOnFunkIsCProjective) {
  const auto m = funk({3, 1, 1, {0.5, 0, 0}});
  const auto basis = flat_projective_basis(3);
  const auto reports = classify(basis, m, sample_points(3, 10, 3));
  ASSERT_EQ(reports.size(), 15u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.flags.projective) << r.field;
    EXPECT_TRUE(r.flags.c_projective) << r.field;
    EXPECT_LT(r.residual("proj3"), 1e-6);
    EXPECT_LT(r.residual("proj11"), 1e-5);
    EXPECT_LT(r.residual("c_proj12"), 1e-6);
  }
}

TEST(Classify, FlagImplications) {
  std::mt19937_64 rng(4);
  const auto m = funk({2});
  std::vector<PolyVectorField> fields = flat_projective_basis(2);
  for (int k = 0; k < 4; ++k) fields.push_back(random_quadratic(2, rng, "q" + std::to_string(k)));
  for (const auto& r : classify(fields, m, sample_points(2, 10, 4))) {
    if (r.flags.c_projective || r.flags.affine || r.flags.special) {
      EXPECT_TRUE(r.flags.projective) << r.field;
    }
    if (r.flags.projective) {
      EXPECT_TRUE(r.factor.has_value());
    }
  }
}

TEST(Classify, KillingBasisOfSpaceForms) {
  for (double k : {0.0, -1.0}) {
    const auto m = space_form({3, k});
    for (const auto& r : classify(killing_basis({3, k}), m, sample_points(3, 10, 5))) {
      EXPECT_TRUE(r.flags.killing_alpha) << r.field;
      EXPECT_TRUE(r.flags.affine) << r.field;
      EXPECT_TRUE(r.flags.c_projective) << r.field;
    }
  }
}

// Projective on F iff projective on alpha and L(alpha s) = 0, over a pool of 50 fields.
TEST(Classify, ProjectiveThroughAlpha) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto basis = flat_projective_basis(2);
  std::vector<PolyVectorField> pool;
  for (int k = 0; k < 25; ++k) {
    std::vector<double> w(basis.size());
    for (auto& v : w) v = u(rng);
    pool.push_back(PolyVectorField::combine(basis, w, "combo" + std::to_string(k)));
    pool.push_back(random_quadratic(2, rng, "random" + std::to_string(k)));
  }
  const auto m = funk({2, 1, 1, {0.5, 0}});
  int projective = 0;
  for (const auto& r : classify(pool, m, sample_points(2, 10, 6))) {
    const bool via_alpha = r.residual("alpha_projective") < kProjectiveTol && r.residual("lie_alpha_s") < kProjectiveTol;
    EXPECT_EQ(r.flags.projective, via_alpha) << r.field;
    projective += r.flags.projective;
  }
  EXPECT_EQ(projective, 25);
}

TEST(InvariantTensors, EuclideanAllVanish) {
  const auto t = invariant_tensors(euclidean(3), pt({0.1, 0.2, 0.3}, {1, 0, 0}));
  for (const auto* v : {&t.D, &t.W, &t.W_tilde, &t.W_star, &t.Z, &t.alpha_s}) EXPECT_EQ(max_abs(*v), 0.0);
}

TEST(InvariantTensors, FunkDouglasWeylAndZVanish) {
  const auto m = funk({3, 1, 1, {0.5, 0, 0}});
  for (const auto& p : sample_points(3, 3, 7)) {
    const auto t = invariant_tensors(m, p);
    EXPECT_LT(max_abs(t.D), 1e-7);
    EXPECT_LT(max_abs(t.W), 1e-7);
    EXPECT_LT(max_abs(t.Z), 1e-7);
  }
}

TEST(InvariantTensors, StructureOnRandomRanders) {
  const auto m = polynomial_randers("r", random_randers_spec(3, 2));
  const auto p = sample_points(3, 1, 8)[0];
  const auto t = invariant_tensors(m, p);
  const int n = 3;
  double dmax = max_abs(t.D);
  EXPECT_GT(dmax, 1e-6);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          EXPECT_NEAR(t.D(i, j, k, l), t.D(i, k, j, l), 1e-9 * dmax);
          EXPECT_NEAR(t.D(i, j, k, l), t.D(i, l, k, j), 1e-9 * dmax);
        }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        double c = 0.0;
        for (int j = 0; j < n; ++j) c += p.y[static_cast<std::size_t>(j)] * t.D(i, j, k, l);
        EXPECT_NEAR(c, 0.0, 1e-9 * std::max(1.0, dmax));
      }
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) EXPECT_NEAR(t.Z(j, l), -t.Z(l, j), 1e-12);
}

TEST(InvarianceSuite, FunkFlatBasis) {
  const auto m = funk({2, 1, 1, {0.5, 0}});
  for (const auto& rep : invariance_suite(flat_projective_basis(2), m, sample_points(2, 3, 9))) {
    EXPECT_TRUE(rep.pass()) << rep.field;
    for (const auto& e : rep.entries) {
      if (e.name == "lie_alpha_s" || e.name == "lie_Z" || e.name == "lie_W") {
        EXPECT_LT(e.residual, 1e-6) << rep.field << e.name;
      }
    }
  }
}

TEST(InvarianceSuite, QuadraticProjectiveOnEuclidean) {
  const auto rep = invariance_suite(radial_quadratic({0.3, 0.2, -0.1}), euclidean(3), sample_points(3, 2, 10));
  EXPECT_TRUE(rep.pass());
}

TEST(InvarianceSuite, RejectsNonProjectiveField) {
  std::mt19937_64 rng(2);
  try {
    (void)invariance_suite(random_quadratic(2, rng, "q"), funk({2}), sample_points(2, 2, 11));
    FAIL() << "expected NotProjective";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotProjective);
  }
}

TEST(SpecialConditions, FunkRotation) {
  const auto m = funk({2});
  const auto sc = special_conditions(rotation2(), m, sample_points(2, 10, 12));
  EXPECT_LT(sc.residual_i, 1e-6);
  EXPECT_LT(sc.residual_ii, 1e-6);
  EXPECT_NEAR(std::abs(sc.c), 0.5, 1e-8);
}

TEST(SpecialConditions, EuclideanConditionTwoIsTrivial) {
  std::mt19937_64 rng(6);
  const auto sc = special_conditions(random_quadratic(2, rng, "q"), euclidean(2), sample_points(2, 5, 13));
  EXPECT_EQ(sc.c, 0.0);
  EXPECT_LT(sc.residual_ii, 1e-15);
}

TEST(SpecialConditions, NonProjectiveFieldOnFunk) {
  std::mt19937_64 rng(7);
  const auto sc = special_conditions(random_quadratic(2, rng, "q"), funk({2}), sample_points(2, 10, 14));
  EXPECT_GT(sc.residual_i, 1e-3);
}

TEST(SpecialConditions, IsotropyUnknownOnRandomRanders) {
  bool raised = false;
  for (std::uint64_t s = 1; s <= 3 && !raised; ++s) {
    try {
      (void)special_conditions(rotation2(), polynomial_randers("r", random_randers_spec(2, s)), sample_points(2, 5, 15));
    } catch (const Error& e) {
      raised = e.code() == ErrorCode::IsotropyUnknown;
    }
  }
  EXPECT_TRUE(raised);
}

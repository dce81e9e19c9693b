#include "finsler/library.hpp"

#include <cmath>
#include <random>

#include "finsler/error.hpp"

namespace finsler {

namespace {

Jet dot(std::span<const Jet> u, std::span<const Jet> v) {
  Jet s = u[0] * v[0];
  for (std::size_t i = 1; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

Jet dot(std::span<const double> a, std::span<const Jet> v) {
  Jet s = Jet::constant(v[0].table(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0.0) s += a[i] * v[i];
  }
  return s;
}

RiemannianSpec klein_ball(int n) {
  return {n, [n](std::span<const Jet> x) {
            const auto un = static_cast<std::size_t>(n);
            const Jet q = 1.0 - dot(x, x);
            const Jet inv = reciprocal(q * q);
            std::vector<Jet> a(un * un);
            for (std::size_t i = 0; i < un; ++i) {
              for (std::size_t j = i; j < un; ++j) {
                Jet v = x[i] * x[j];
                if (i == j) v += q;
                a[i * un + j] = v * inv;
                a[j * un + i] = a[i * un + j];
              }
            }
            return a;
          }};
}

RiemannianSpec flat(int n) {
  return {n, [n](std::span<const Jet> x) {
            const auto un = static_cast<std::size_t>(n);
            std::vector<Jet> a(un * un, Jet::constant(x[0].table(), 0.0));
            for (std::size_t i = 0; i < un; ++i) a[i * un + i] = Jet::constant(x[0].table(), 1.0);
            return a;
          }};
}

}  // namespace

MetricModel funk(const FunkSpec& spec) {
  const int n = spec.n;
  if (n < 1) throw Error(ErrorCode::InvalidSpec, "Funk metric needs n >= 1");
  if ((spec.sign1 != 1 && spec.sign1 != -1) || (spec.sign2 != 1 && spec.sign2 != -1)) {
    throw Error(ErrorCode::InvalidSpec, "Funk signs must be +1 or -1");
  }
  std::vector<double> a = spec.a;
  if (a.empty()) a.assign(static_cast<std::size_t>(n), 0.0);
  if (static_cast<int>(a.size()) != n) throw Error(ErrorCode::InvalidSpec, "Funk vector a has wrong length");
  double aa = 0.0;
  for (double v : a) aa += v * v;
  if (!(aa < 1.0)) throw Error(ErrorCode::InvalidSpec, "Funk vector a must satisfy |a| < 1");
  const double s1 = spec.sign1, s2 = spec.sign2;

  OneFormSpec beta{n, [n, a, s1, s2](std::span<const Jet> x) {
                     const Jet q = reciprocal(1.0 - dot(x, x));
                     const Jet p = reciprocal(1.0 + dot(a, x));
                     std::vector<Jet> b;
                     b.reserve(static_cast<std::size_t>(n));
                     for (int i = 0; i < n; ++i) {
                       Jet v = s1 * (x[static_cast<std::size_t>(i)] * q);
                       if (a[static_cast<std::size_t>(i)] != 0.0) v += s2 * a[static_cast<std::size_t>(i)] * p;
                       b.push_back(std::move(v));
                     }
                     return b;
                   }};
  ScalarField direct(n, [a, s1, s2](std::span<const Jet> x, std::span<const Jet> y) {
    const Jet xx = dot(x, x);
    const Jet yy = dot(y, y);
    const Jet xy = dot(x, y);
    const Jet q = 1.0 - xx;
    return (sqrt(yy - (xx * yy - xy * xy)) + s1 * xy) / q + s2 * dot(a, y) / (1.0 + dot(a, x));
  });
  std::string name = "funk";
  return MetricModel::randers(std::move(name), {klein_ball(n), std::move(beta)}, std::move(direct));
}

RiemannianSpec klein(const SpaceFormSpec& spec) {
  if (spec.n < 1) throw Error(ErrorCode::InvalidSpec, "space form needs n >= 1");
  if (spec.k == 0.0) return flat(spec.n);
  if (spec.k == -1.0) return klein_ball(spec.n);
  throw Error(ErrorCode::UnsupportedCurvature, "only k = 0 and k = -1 space forms are available");
}

MetricModel space_form(const SpaceFormSpec& spec) {
  return MetricModel::riemannian(spec.k == 0.0 ? "euclidean" : "klein", klein(spec));
}

MetricModel euclidean(int n) { return space_form({n, 0.0}); }

MetricModel minkowski_randers(int n, std::vector<double> b) {
  if (n < 1 || static_cast<int>(b.size()) != n) {
    throw Error(ErrorCode::InvalidSpec, "Minkowski-Randers vector b has wrong length");
  }
  double bb = 0.0;
  for (double v : b) bb += v * v;
  if (!(bb < 1.0)) throw Error(ErrorCode::InvalidSpec, "Minkowski-Randers needs |b| < 1");
  OneFormSpec beta{n, [b](std::span<const Jet> x) {
                     std::vector<Jet> out;
                     for (double v : b) out.push_back(Jet::constant(x[0].table(), v));
                     return out;
                   }};
  return MetricModel::randers("minkowski-randers", {flat(n), std::move(beta)});
}

std::vector<PolyVectorField> killing_basis(const SpaceFormSpec& spec) {
  klein(spec);  // validates k
  const int n = spec.n;
  const auto un = static_cast<std::size_t>(n);
  std::vector<PolyVectorField> out;
  for (int m = 0; m < n; ++m) {
    std::vector<double> b(un, 0.0), C(un * un * un, 0.0);
    b[static_cast<std::size_t>(m)] = 1.0;
    // k <x, e_m> x^a  ->  C^a_{am} = C^a_{ma} = k/2 (a != m), C^m_mm = k
    for (int a = 0; a < n; ++a) {
      C[static_cast<std::size_t>((a * n + a) * n + m)] += 0.5 * spec.k;
      C[static_cast<std::size_t>((a * n + m) * n + a)] += 0.5 * spec.k;
    }
    out.emplace_back(n, std::move(b), std::vector<double>{}, std::move(C), "translation" + std::to_string(m + 1));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<double> A(un * un, 0.0);
      A[static_cast<std::size_t>(i * n + j)] = 1.0;
      A[static_cast<std::size_t>(j * n + i)] = -1.0;
      out.emplace_back(n, std::vector<double>{}, std::move(A), std::vector<double>{},
                       "rotation" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  }
  return out;
}

std::vector<PolyVectorField> flat_projective_basis(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidSpec, "flat projective basis needs n >= 1");
  const auto un = static_cast<std::size_t>(n);
  std::vector<PolyVectorField> out;
  for (int i = 0; i < n; ++i) {
    std::vector<double> b(un, 0.0);
    b[static_cast<std::size_t>(i)] = 1.0;
    out.emplace_back(n, std::move(b), std::vector<double>{}, std::vector<double>{}, "e" + std::to_string(i + 1));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<double> A(un * un, 0.0);
      A[static_cast<std::size_t>(i * n + j)] = 1.0;
      out.emplace_back(n, std::vector<double>{}, std::move(A), std::vector<double>{},
                       "x" + std::to_string(j + 1) + "e" + std::to_string(i + 1));
    }
  }
  for (int m = 0; m < n; ++m) {
    std::vector<double> C(un * un * un, 0.0);
    for (int a = 0; a < n; ++a) {
      C[static_cast<std::size_t>((a * n + a) * n + m)] += 0.5;
      C[static_cast<std::size_t>((a * n + m) * n + a)] += 0.5;
    }
    out.emplace_back(n, std::vector<double>{}, std::vector<double>{}, std::move(C),
                     "x" + std::to_string(m + 1) + "x");
  }
  return out;
}

MetricModel polynomial_randers(std::string name, const RandersPolySpec& spec) {
  const int n = spec.n;
  const auto un = static_cast<std::size_t>(n);
  if (n < 1 || spec.a.size() != un * un || spec.b.size() != un) {
    throw Error(ErrorCode::InvalidSpec, "polynomial Randers tables have wrong shape");
  }
  for (const auto& p : spec.a) {
    if (p.dim() != n) throw Error(ErrorCode::InvalidSpec, "polynomial dimension does not match n");
  }
  for (const auto& p : spec.b) {
    if (p.dim() != n) throw Error(ErrorCode::InvalidSpec, "polynomial dimension does not match n");
  }
  RiemannianSpec alpha{n, [n, a = spec.a](std::span<const Jet> x) {
                         const auto un = static_cast<std::size_t>(n);
                         std::vector<Jet> out(un * un);
                         for (std::size_t i = 0; i < un; ++i) {
                           for (std::size_t j = i; j < un; ++j) {
                             if (i == j) {
                               out[i * un + i] = a[i * un + i](x);
                             } else {
                               out[i * un + j] = 0.5 * (a[i * un + j](x) + a[j * un + i](x));
                               out[j * un + i] = out[i * un + j];
                             }
                           }
                         }
                         return out;
                       }};
  OneFormSpec beta{n, [b = spec.b](std::span<const Jet> x) {
                     std::vector<Jet> out;
                     for (const auto& p : b) out.push_back(p(x));
                     return out;
                   }};
  return MetricModel::randers(std::move(name), {std::move(alpha), std::move(beta)});
}

namespace {

std::vector<std::vector<int>> exponents_up_to_2(int n) {
  std::vector<std::vector<int>> out;
  out.emplace_back(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    out.push_back(e);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      std::vector<int> e(static_cast<std::size_t>(n), 0);
      ++e[static_cast<std::size_t>(i)];
      ++e[static_cast<std::size_t>(j)];
      out.push_back(e);
    }
  }
  return out;
}

/// Bound of |p(x)| on the cube |x_i| <= r.
double cube_bound(const Polynomial& p, double r) {
  double s = 0.0;
  for (const auto& t : p.terms()) {
    int d = 0;
    for (int e : t.exponents) d += e;
    s += std::abs(t.coeff) * std::pow(r, d);
  }
  return s;
}

}  // namespace

RandersPolySpec random_randers_spec(int n, std::uint64_t seed, double b_amplitude) {
  if (n < 1) throw Error(ErrorCode::InvalidSpec, "random Randers metric needs n >= 1");
  constexpr double kRadius = 0.7;
  constexpr double kPerturbation = 0.05;
  const auto un = static_cast<std::size_t>(n);
  const auto exps = exponents_up_to_2(n);
  std::mt19937_64 gen(seed);
  auto coeff = [&gen] { return 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0; };
  auto draw = [&](double scale) {
    Polynomial p(n, {});
    for (const auto& e : exps) p.add_term(scale * coeff(), e);
    return p;
  };

  for (int attempt = 0; attempt < 1000; ++attempt) {
    RandersPolySpec spec;
    spec.n = n;
    spec.a.assign(un * un, Polynomial(n, {}));
    for (std::size_t i = 0; i < un; ++i) {
      for (std::size_t j = i; j < un; ++j) {
        Polynomial p = draw(kPerturbation);
        if (i == j) p.add_term(1.0, std::vector<int>(un, 0));
        spec.a[i * un + j] = p;
        spec.a[j * un + i] = p;
      }
    }
    for (std::size_t i = 0; i < un; ++i) spec.b.push_back(draw(b_amplitude));

    // Gershgorin lower bound of the smallest eigenvalue of a.
    double lam = 1e300;
    for (std::size_t i = 0; i < un; ++i) {
      // the diagonal holds the unit term as a separate monomial
      double row = 1.0 - (cube_bound(spec.a[i * un + i], kRadius) - 1.0);
      for (std::size_t j = 0; j < un; ++j) {
        if (j != i) row -= cube_bound(spec.a[i * un + j], kRadius);
      }
      lam = std::min(lam, row);
    }
    double bb = 0.0;
    for (const auto& p : spec.b) bb += std::pow(cube_bound(p, kRadius), 2);
    if (lam > 0.2 && bb / lam < 0.64) return spec;
  }
  throw Error(ErrorCode::InvalidSpec, "could not draw a valid random Randers metric");
}

}  // namespace finsler

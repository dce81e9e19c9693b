#include "finsler/randers.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

#include "finsler/error.hpp"
#include "finsler/jet_linalg.hpp"

namespace finsler {

namespace {

std::vector<Jet> owned_vars(const SamplePoint& at, int order) {
  return JetContext(at.x, at.y, order).lift_point();
}

}  // namespace

LocalRanders::LocalRanders(const RandersStructure& s, std::span<const Jet> x, std::span<const Jet> y)
    : structure_(&s), n_(s.alpha.n), x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  if (static_cast<int>(x_.size()) != n_) throw Error(ErrorCode::InvalidSpec, "dimension mismatch");
}

LocalRanders::LocalRanders(const RandersStructure& s, const SamplePoint& at, int order)
    : structure_(&s), n_(s.alpha.n) {
  auto vars = owned_vars(at, order);
  if (static_cast<int>(at.x.size()) != n_) throw Error(ErrorCode::InvalidSpec, "dimension mismatch");
  x_.assign(vars.begin(), vars.begin() + n_);
  y_.assign(vars.begin() + n_, vars.end());
}

const JetTensor& LocalRanders::a() {
  if (!a_) {
    auto entries = structure_->alpha.a(x());
    JetTensor t(n_, "dd");
    for (std::size_t k = 0; k < entries.size(); ++k) t[k] = std::move(entries[k]);
    t.symmetries = {{0, 1, false}};
    a_ = std::move(t);
  }
  return *a_;
}

const JetTensor& LocalRanders::a_inv() {
  if (!ainv_) {
    auto inv = invert(a().data(), n_);
    JetTensor t(n_, "uu");
    for (std::size_t k = 0; k < inv.size(); ++k) t[k] = std::move(inv[k]);
    t.symmetries = {{0, 1, false}};
    ainv_ = std::move(t);
  }
  return *ainv_;
}

const JetTensor& LocalRanders::christoffel() {
  if (gamma_) return *gamma_;
  const auto& A = a();
  const auto& Ai = a_inv();
  // da(l, k, j) = d a_lk / dx^j
  JetTensor da(n_, "ddd");
  for (int l = 0; l < n_; ++l) {
    for (int k = 0; k < n_; ++k) {
      for (int j = 0; j < n_; ++j) da(l, k, j) = A(l, k).diff(j);
    }
  }
  JetTensor gamma(n_, "udd");
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      for (int k = j; k < n_; ++k) {
        Jet sum = Ai(i, 0) * (da(0, k, j) + da(0, j, k) - da(j, k, 0));
        for (int l = 1; l < n_; ++l) sum += Ai(i, l) * (da(l, k, j) + da(l, j, k) - da(j, k, l));
        gamma(i, j, k) = 0.5 * sum;
        gamma(i, k, j) = gamma(i, j, k);
      }
    }
  }
  gamma.symmetries = {{1, 2, false}};
  gamma_ = std::move(gamma);
  return *gamma_;
}

const JetTensor& LocalRanders::spray_alpha() {
  if (Ga_) return *Ga_;
  const auto& gamma = christoffel();
  JetTensor G(n_, "u");
  for (int i = 0; i < n_; ++i) {
    Jet sum = Jet::constant(y_[0].table(), 0.0);
    for (int j = 0; j < n_; ++j) {
      Jet row = gamma(i, j, j) * y_[static_cast<std::size_t>(j)];
      for (int k = j + 1; k < n_; ++k) row += 2.0 * (gamma(i, j, k) * y_[static_cast<std::size_t>(k)]);
      sum += row * y_[static_cast<std::size_t>(j)];
    }
    G(i) = 0.5 * sum;
  }
  Ga_ = std::move(G);
  return *Ga_;
}

const JetTensor& LocalRanders::b() {
  if (!b_) {
    auto entries = structure_->beta.b(x());
    JetTensor t(n_, "d");
    for (std::size_t k = 0; k < entries.size(); ++k) t[k] = std::move(entries[k]);
    b_ = std::move(t);
  }
  return *b_;
}

const JetTensor& LocalRanders::nabla_b() {
  if (nb_) return *nb_;
  const auto& B = b();
  const auto& gamma = christoffel();
  JetTensor nb(n_, "dd");
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      Jet v = B(i).diff(j);
      for (int k = 0; k < n_; ++k) v -= B(k) * gamma(k, i, j);
      nb(i, j) = std::move(v);
    }
  }
  nb_ = std::move(nb);
  return *nb_;
}

const JetTensor& LocalRanders::r() {
  if (!r_) {
    const auto& nb = nabla_b();
    JetTensor t(n_, "dd");
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) t(i, j) = 0.5 * (nb(i, j) + nb(j, i));
    }
    t.symmetries = {{0, 1, false}};
    r_ = std::move(t);
  }
  return *r_;
}

const JetTensor& LocalRanders::s() {
  if (!s_) {
    const auto& nb = nabla_b();
    JetTensor t(n_, "dd");
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) t(i, j) = 0.5 * (nb(i, j) - nb(j, i));
    }
    t.symmetries = {{0, 1, true}};
    s_ = std::move(t);
  }
  return *s_;
}

const JetTensor& LocalRanders::s_up() {
  if (!sup_) {
    const auto& S = s();
    const auto& Ai = a_inv();
    JetTensor t(n_, "ud");
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        Jet v = Ai(i, 0) * S(0, j);
        for (int h = 1; h < n_; ++h) v += Ai(i, h) * S(h, j);
        t(i, j) = std::move(v);
      }
    }
    sup_ = std::move(t);
  }
  return *sup_;
}

const JetTensor& LocalRanders::s_vec() {
  if (!svec_) {
    const auto& su = s_up();
    const auto& B = b();
    JetTensor t(n_, "d");
    for (int j = 0; j < n_; ++j) {
      Jet v = B(0) * su(0, j);
      for (int i = 1; i < n_; ++i) v += B(i) * su(i, j);
      t(j) = std::move(v);
    }
    svec_ = std::move(t);
  }
  return *svec_;
}

const JetTensor& LocalRanders::e() {
  if (!e_) {
    const auto& R = r();
    const auto& B = b();
    const auto& sv = s_vec();
    JetTensor t(n_, "dd");
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) t(i, j) = R(i, j) + B(i) * sv(j) + B(j) * sv(i);
    }
    t.symmetries = {{0, 1, false}};
    e_ = std::move(t);
  }
  return *e_;
}

const JetTensor& LocalRanders::s0_up() {
  if (!s0up_) {
    const auto& su = s_up();
    JetTensor t(n_, "u");
    for (int i = 0; i < n_; ++i) {
      Jet v = su(i, 0) * y_[0];
      for (int j = 1; j < n_; ++j) v += su(i, j) * y_[static_cast<std::size_t>(j)];
      t(i) = std::move(v);
    }
    s0up_ = std::move(t);
  }
  return *s0up_;
}

const Jet& LocalRanders::alpha() {
  if (!alpha_) alpha_ = sqrt(alpha_squared(structure_->alpha, x(), y()));
  return *alpha_;
}

const Jet& LocalRanders::beta() {
  if (!beta_) {
    const auto& B = b();
    Jet v = B(0) * y_[0];
    for (int i = 1; i < n_; ++i) v += B(i) * y_[static_cast<std::size_t>(i)];
    beta_ = std::move(v);
  }
  return *beta_;
}

const Jet& LocalRanders::F() {
  if (!F_) F_ = alpha() + beta();
  return *F_;
}

const Jet& LocalRanders::e00() {
  if (!e00_) {
    const auto& E = e();
    Jet v = Jet::constant(y_[0].table(), 0.0);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) v += E(i, j) * (y_[static_cast<std::size_t>(i)] * y_[static_cast<std::size_t>(j)]);
    }
    e00_ = std::move(v);
  }
  return *e00_;
}

const Jet& LocalRanders::s0() {
  if (!s0_) {
    const auto& sv = s_vec();
    Jet v = sv(0) * y_[0];
    for (int i = 1; i < n_; ++i) v += sv(i) * y_[static_cast<std::size_t>(i)];
    s0_ = std::move(v);
  }
  return *s0_;
}

const Jet& LocalRanders::beta_norm_sq() {
  if (!bb_) {
    const auto& B = b();
    const auto& Ai = a_inv();
    Jet v = Jet::constant(y_[0].table(), 0.0);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) v += Ai(i, j) * (B(i) * B(j));
    }
    if (!(v.value() < 1.0)) {
      throw Error(ErrorCode::RandersConditionViolated,
                  "|beta|_alpha^2 = " + std::to_string(v.value()) + " >= 1");
    }
    bb_ = std::move(v);
  }
  return *bb_;
}

const Jet& LocalRanders::rho() {
  if (!rho_) rho_ = 0.5 * log(1.0 - beta_norm_sq());
  return *rho_;
}

const Jet& LocalRanders::rho0() {
  if (!rho0_) {
    const Jet& p = rho();
    Jet v = p.diff(0) * y_[0];
    for (int i = 1; i < n_; ++i) v += p.diff(i) * y_[static_cast<std::size_t>(i)];
    rho0_ = std::move(v);
  }
  return *rho0_;
}

const JetTensor& LocalRanders::spray() {
  if (G_) return *G_;
  beta_norm_sq();
  const auto& Ga = spray_alpha();
  const auto& s0u = s0_up();
  const Jet coeff = e00() / (2.0 * F()) - s0();
  JetTensor G(n_, "u");
  for (int i = 0; i < n_; ++i) G(i) = Ga(i) + coeff * y_[static_cast<std::size_t>(i)] + alpha() * s0u(i);
  G_ = std::move(G);
  return *G_;
}

Jet LocalRanders::s_curvature() {
  beta_norm_sq();
  return (n_ + 1.0) * (e00() / (2.0 * F()) - s0() - rho0());
}

Jet LocalRanders::bh_density() {
  const Jet det = determinant(a().data(), n_);
  return sqrt(det) * pow(1.0 - beta_norm_sq(), 0.5 * (n_ + 1));
}

JetTensor LocalRanders::metric_compatibility() {
  const auto& A = a();
  const auto& gamma = christoffel();
  JetTensor out(n_, "ddd");
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      for (int k = 0; k < n_; ++k) {
        Jet v = A(i, j).diff(k);
        for (int r = 0; r < n_; ++r) v -= gamma(r, k, i) * A(r, j) + gamma(r, k, j) * A(i, r);
        out(i, j, k) = std::move(v);
      }
    }
  }
  return out;
}

LeviCivita levi_civita(const RiemannianSpec& a, const SamplePoint& at) {
  RandersStructure s{a, OneFormSpec{a.n, [n = a.n](std::span<const Jet> x) {
                                      return std::vector<Jet>(static_cast<std::size_t>(n),
                                                              Jet::constant(x[0].table(), 0.0));
                                    }}};
  LocalRanders lr(s, at, 2);
  return {values(lr.christoffel()), values(lr.spray_alpha())};
}

RandersData randers_data(const RandersStructure& s, const SamplePoint& at) {
  LocalRanders lr(s, at, 2);
  RandersData out;
  lr.beta_norm_sq();
  out.r = values(lr.r());
  out.s = values(lr.s());
  out.s_up = values(lr.s_up());
  out.s_vec = values(lr.s_vec());
  out.e = values(lr.e());
  out.rho = lr.rho().value();
  out.e00 = lr.e00().value();
  out.s0 = lr.s0().value();
  out.rho0 = lr.rho0().value();
  return out;
}

TensorValue spray_randers(const RandersStructure& s, const SamplePoint& at) {
  LocalRanders lr(s, at, 2);
  return values(lr.spray());
}

double VolumeForm::density(std::span<const double> x) const {
  const auto table = MultiIndexTable::get(static_cast<int>(x.size()), 0);
  std::vector<Jet> xs;
  for (double v : x) xs.push_back(Jet::constant(table, v));
  return sigma(xs).value();
}

VolumeForm VolumeForm::busemann_hausdorff(const MetricModel& m) {
  const RandersStructure* rs = m.randers_structure();
  if (!rs) {
    throw Error(ErrorCode::InvalidSpec,
                "closed-form Busemann-Hausdorff density needs a Randers split");
  }
  RandersStructure copy = *rs;
  return {VolumeKind::busemann_hausdorff, "busemann-hausdorff",
          [copy](std::span<const Jet> x) {
            LocalRanders lr(copy, x, x);
            return lr.bh_density();
          }};
}

VolumeForm VolumeForm::coordinate(int /*n*/) {
  return {VolumeKind::coordinate, "coordinate",
          [](std::span<const Jet> x) { return Jet::constant(x[0].table(), 1.0); }};
}

VolumeForm VolumeForm::custom(std::string name, std::function<Jet(std::span<const Jet> x)> sigma) {
  return {VolumeKind::custom, std::move(name), std::move(sigma)};
}

namespace {

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = beta;
    J(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
  nodes.resize(static_cast<std::size_t>(m));
  weights.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    nodes[static_cast<std::size_t>(k)] = eig.eigenvalues()(k);
    const double v0 = eig.eigenvectors()(0, k);
    weights[static_cast<std::size_t>(k)] = 2.0 * v0 * v0;
  }
}

/// Ray length t with F(x, t u) = 1, by Newton on t F(x, u) - 1.
double ray_length(const MetricModel& m, std::span<const double> x, std::span<const double> u) {
  std::vector<double> tu(u.begin(), u.end());
  double t = 1.0 / m(x, u);
  for (int it = 0; it < 8; ++it) {
    for (std::size_t i = 0; i < u.size(); ++i) tu[i] = t * u[i];
    const double f = m(x, tu) - 1.0;
    if (std::abs(f) < 1e-15) break;
    // dF(x, t u)/dt = F(x, u) by homogeneity
    t -= f / m(x, u);
  }
  return t;
}

/// Mean of t(u)^n over the unit sphere with `level` controlling resolution.
double sphere_mean(const MetricModel& m, std::span<const double> x, int level) {
  const int n = m.dim();
  if (n == 1) {
    const double a = ray_length(m, x, std::vector<double>{1.0});
    const double b = ray_length(m, x, std::vector<double>{-1.0});
    return 0.5 * (a + b);
  }
  if (n == 2) {
    const int nodes = 1 << level;
    double sum = 0.0;
    std::vector<double> u(2);
    for (int k = 0; k < nodes; ++k) {
      const double th = 2.0 * std::numbers::pi * k / nodes;
      u[0] = std::cos(th);
      u[1] = std::sin(th);
      const double t = ray_length(m, x, u);
      sum += t * t;
    }
    return sum / nodes;
  }
  if (n == 3) {
    const int polar = 1 << (level / 2);
    const int azimuth = 2 * polar;
    std::vector<double> zs, ws;
    gauss_legendre(polar, zs, ws);
    double sum = 0.0;
    std::vector<double> u(3);
    for (int a = 0; a < polar; ++a) {
      const double z = zs[static_cast<std::size_t>(a)];
      const double rho = std::sqrt(1.0 - z * z);
      double ring = 0.0;
      for (int b = 0; b < azimuth; ++b) {
        const double ph = 2.0 * std::numbers::pi * b / azimuth;
        u[0] = rho * std::cos(ph);
        u[1] = rho * std::sin(ph);
        u[2] = z;
        const double t = ray_length(m, x, u);
        ring += t * t * t;
      }
      sum += ws[static_cast<std::size_t>(a)] * ring / azimuth;
    }
    return sum / 2.0;
  }
  throw Error(ErrorCode::InvalidSpec, "indicatrix integration supports n <= 3");
}

}  // namespace

double bh_volume(const MetricModel& m, std::span<const double> x, VolumeMethod method) {
  if (method == VolumeMethod::closed_form_randers) {
    return VolumeForm::busemann_hausdorff(m).density(x);
  }
  // Vol{F < 1} / Vol(B^n) equals the sphere mean of t(u)^n.
  constexpr int kLevel = 17;  // 2^17 nodes on the circle, 256 x 512 on the sphere
  const double fine = sphere_mean(m, x, kLevel);
  const double coarse = sphere_mean(m, x, kLevel - 2);
  if (!(std::abs(fine - coarse) <= 1e-8 * std::abs(fine))) {
    throw Error(ErrorCode::IntegrationDidNotConverge,
                "indicatrix cubature changed by " + std::to_string(std::abs(fine - coarse)));
  }
  return 1.0 / fine;
}

Jet s_curvature(LocalGeometry& geo, const VolumeForm& vol) {
  const int n = geo.dim();
  const auto& Gj = geo.connection();
  const Jet lsig = log(vol.sigma(geo.x()));
  Jet S = Gj(0, 0);
  for (int m = 1; m < n; ++m) S += Gj(m, m);
  for (int m = 0; m < n; ++m) S -= geo.y()[static_cast<std::size_t>(m)] * lsig.diff(geo.x_var(m));
  return S;
}

double s_curvature(const MetricModel& m, const SamplePoint& at, const VolumeForm& vol) {
  LocalGeometry geo(m, at, 3);
  return s_curvature(geo, vol).value();
}

double s_curvature_randers(const RandersStructure& s, const SamplePoint& at) {
  LocalRanders lr(s, at, 2);
  return lr.s_curvature().value();
}

}  // namespace finsler

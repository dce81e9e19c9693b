#include "finsler/vector_field.hpp"

#include "finsler/error.hpp"

namespace finsler {

PolyVectorField::PolyVectorField(int n, std::vector<double> b, std::vector<double> A,
                                 std::vector<double> C, std::string name)
    : n_(n), b_(std::move(b)), A_(std::move(A)), C_(std::move(C)), name_(std::move(name)) {
  const auto un = static_cast<std::size_t>(n);
  if (n < 1) throw Error(ErrorCode::InvalidSpec, "vector field dimension must be positive");
  if (b_.empty()) b_.assign(un, 0.0);
  if (A_.empty()) A_.assign(un * un, 0.0);
  if (C_.empty()) C_.assign(un * un * un, 0.0);
  if (b_.size() != un || A_.size() != un * un || C_.size() != un * un * un) {
    throw Error(ErrorCode::InvalidSpec, "vector field coefficient shapes do not match n");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        auto& a = C_[static_cast<std::size_t>((i * n + j) * n + k)];
        auto& c = C_[static_cast<std::size_t>((i * n + k) * n + j)];
        const double s = 0.5 * (a + c);
        a = s;
        c = s;
      }
    }
  }
}

PolyVectorField PolyVectorField::zero(int n, std::string name) { return {n, {}, {}, {}, std::move(name)}; }

PolyVectorField PolyVectorField::combine(std::span<const PolyVectorField> fields,
                                         std::span<const double> w, std::string name) {
  if (fields.empty() || fields.size() != w.size()) {
    throw Error(ErrorCode::InvalidSpec, "combine needs one weight per field");
  }
  const int n = fields[0].dim();
  PolyVectorField out = zero(n, std::move(name));
  for (std::size_t f = 0; f < fields.size(); ++f) {
    if (fields[f].dim() != n) throw Error(ErrorCode::InvalidSpec, "field dimensions differ");
    for (std::size_t k = 0; k < out.b_.size(); ++k) out.b_[k] += w[f] * fields[f].b_[k];
    for (std::size_t k = 0; k < out.A_.size(); ++k) out.A_[k] += w[f] * fields[f].A_[k];
    for (std::size_t k = 0; k < out.C_.size(); ++k) out.C_[k] += w[f] * fields[f].C_[k];
  }
  return out;
}

int PolyVectorField::degree() const {
  for (double c : C_) {
    if (c != 0.0) return 2;
  }
  for (double a : A_) {
    if (a != 0.0) return 1;
  }
  return 0;
}

std::vector<double> PolyVectorField::operator()(std::span<const double> x) const {
  std::vector<double> v(b_);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) {
      s += A(i, j) * x[static_cast<std::size_t>(j)];
      for (int k = 0; k < n_; ++k) s += C(i, j, k) * x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(k)];
    }
    v[static_cast<std::size_t>(i)] += s;
  }
  return v;
}

std::vector<Jet> PolyVectorField::evaluate(std::span<const Jet> x) const {
  const auto& table = x[0].table();
  std::vector<Jet> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    Jet v = Jet::constant(table, b(i));
    for (int j = 0; j < n_; ++j) {
      const auto xj = x[static_cast<std::size_t>(j)];
      if (A(i, j) != 0.0) v += A(i, j) * xj;
      for (int k = j; k < n_; ++k) {
        const double c = (k == j ? 1.0 : 2.0) * C(i, j, k);
        if (c != 0.0) v += c * (xj * x[static_cast<std::size_t>(k)]);
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Jet> PolyVectorField::jacobian(std::span<const Jet> x) const {
  const auto& table = x[0].table();
  std::vector<Jet> out;
  out.reserve(static_cast<std::size_t>(n_ * n_));
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) {
      Jet v = Jet::constant(table, A(i, k));
      for (int j = 0; j < n_; ++j) {
        if (C(i, k, j) != 0.0) v += 2.0 * C(i, k, j) * x[static_cast<std::size_t>(j)];
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<double> PolyVectorField::coefficients() const {
  std::vector<double> out(b_);
  out.insert(out.end(), A_.begin(), A_.end());
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      for (int k = j; k < n_; ++k) out.push_back(C(i, j, k));
    }
  }
  return out;
}

CompleteLift::CompleteLift(const PolyVectorField& V, std::span<const Jet> x, std::span<const Jet> y)
    : V_(&V), n_(V.dim()), y_(y.begin(), y.end()), v_(V.evaluate(x)), dv_(V.jacobian(x)) {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_) {
    throw Error(ErrorCode::InvalidSpec, "vector field dimension does not match point");
  }
  for (int i = 0; i < n_; ++i) {
    Jet f = y_[0] * dv_[static_cast<std::size_t>(i * n_)];
    for (int k = 1; k < n_; ++k) f += y_[static_cast<std::size_t>(k)] * dv_[static_cast<std::size_t>(i * n_ + k)];
    fiber_.push_back(std::move(f));
  }
}

Jet CompleteLift::apply(const Jet& f) const {
  Jet out = v_[0] * f.diff(0);
  for (int i = 1; i < n_; ++i) out += v_[static_cast<std::size_t>(i)] * f.diff(i);
  for (int i = 0; i < n_; ++i) out += fiber_[static_cast<std::size_t>(i)] * f.diff(n_ + i);
  return out;
}

JetTensor CompleteLift::lie(const JetTensor& t) const {
  const int rank = t.rank();
  if (rank > 4) throw Error(ErrorCode::UnsupportedVariance, "Lie derivative supports rank <= 4");
  JetTensor out(n_, t.variance());
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    const auto idx = t.unflatten(flat);
    Jet v = apply(t[flat]);
    for (int s = 0; s < rank; ++s) {
      const std::size_t stride = t.stride(s);
      const int a = idx[static_cast<std::size_t>(s)];
      const std::size_t base = flat - static_cast<std::size_t>(a) * stride;
      for (int r = 0; r < n_; ++r) {
        const Jet& tr = t[base + static_cast<std::size_t>(r) * stride];
        if (t.variance()[static_cast<std::size_t>(s)] == 'u') {
          v -= tr * dv_[static_cast<std::size_t>(a * n_ + r)];
        } else {
          v += tr * dv_[static_cast<std::size_t>(r * n_ + a)];
        }
      }
    }
    out[flat] = std::move(v);
  }
  out.symmetries = t.symmetries;
  return out;
}

JetTensor CompleteLift::lie_spray(const JetTensor& G) const {
  JetTensor out(n_, "u");
  for (int i = 0; i < n_; ++i) {
    Jet v = apply(G(i));
    for (int k = 0; k < n_; ++k) v -= G(k) * dv_[static_cast<std::size_t>(i * n_ + k)];
    for (int j = 0; j < n_; ++j) {
      for (int k = j; k < n_; ++k) {
        const double c = (k == j ? 1.0 : 2.0) * V_->C(i, j, k);
        if (c != 0.0) v += c * (y_[static_cast<std::size_t>(j)] * y_[static_cast<std::size_t>(k)]);
      }
    }
    out(i) = std::move(v);
  }
  return out;
}

}  // namespace finsler

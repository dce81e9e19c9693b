#include "finsler/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "finsler/error.hpp"

namespace finsler {

Polynomial::Polynomial(int n, std::vector<Monomial> terms) : n_(n) {
  for (auto& t : terms) add_term(t.coeff, std::move(t.exponents));
}

Polynomial Polynomial::constant(int n, double c) {
  Polynomial p(n, {});
  if (c != 0.0) p.add_term(c, std::vector<int>(static_cast<std::size_t>(n), 0));
  return p;
}

Polynomial& Polynomial::add_term(double coeff, std::vector<int> exponents) {
  if (static_cast<int>(exponents.size()) != n_ ||
      std::any_of(exponents.begin(), exponents.end(), [](int e) { return e < 0; })) {
    throw Error(ErrorCode::InvalidSpec, "polynomial exponent vector has wrong shape");
  }
  terms_.push_back({coeff, std::move(exponents)});
  return *this;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, std::accumulate(t.exponents.begin(), t.exponents.end(), 0));
  return d;
}

double Polynomial::operator()(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double term = t.coeff;
    for (std::size_t v = 0; v < t.exponents.size(); ++v) term *= std::pow(x[v], t.exponents[v]);
    sum += term;
  }
  return sum;
}

Jet Polynomial::operator()(std::span<const Jet> x) const {
  const auto& table = x[0].table();
  Jet sum = Jet::constant(table, 0.0);
  // powers[v][k] = (x^v)^k, built lazily up to the highest exponent used
  std::vector<std::vector<Jet>> powers(x.size());
  for (const auto& t : terms_) {
    Jet term = Jet::constant(table, t.coeff);
    for (std::size_t v = 0; v < t.exponents.size(); ++v) {
      const int e = t.exponents[v];
      if (e == 0) continue;
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(Jet::constant(table, 1.0));
      while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * x[v]);
      term = term * pw[static_cast<std::size_t>(e)];
    }
    sum += term;
  }
  return sum;
}

}  // namespace finsler

#include "polyauto/poly.hpp"

#include <algorithm>

#include "polyauto/errors.hpp"

namespace polyauto {

UniPoly::UniPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(Complex c, int degree) {
  std::vector<Complex> v(degree + 1, 0.0);
  v[degree] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0, 0.0)) coeffs_.pop_back();
}

Complex UniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[i];
}

double UniPoly::lower_order_mass() const {
  double s = 0.0;
  for (int i = 0; i < degree(); ++i) s += std::abs(coeffs_[i]);
  return s;
}

Complex UniPoly::operator()(Complex z) const { return eval(z); }

UniPoly UniPoly::derivative() const {
  std::vector<Complex> v;
  for (int i = 1; i <= degree(); ++i) v.push_back(coeffs_[i] * static_cast<double>(i));
  return UniPoly(std::move(v));
}

UniPoly UniPoly::compose(const UniPoly& inner) const {
  UniPoly acc;
  for (int i = degree(); i >= 0 && !coeffs_.empty(); --i) acc = acc * inner + UniPoly({coeffs_[i]});
  return acc;
}

UniPoly UniPoly::scaled_argument(Complex s) const {
  std::vector<Complex> v = coeffs_;
  Complex f = 1.0;
  for (auto& c : v) {
    c *= f;
    f *= s;
  }
  return UniPoly(std::move(v));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Complex> v(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return UniPoly(std::move(v));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + Complex(-1.0) * b; }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UniPoly(std::move(v));
}

UniPoly operator*(Complex s, const UniPoly& a) {
  std::vector<Complex> v = a.coeffs_;
  for (auto& c : v) c *= s;
  return UniPoly(std::move(v));
}

Complex poly_eval(const UniPoly& p, Complex z) {
  const Complex r = p(z);
  if (std::isfinite(z.real()) && std::isfinite(z.imag()) &&
      !(std::isfinite(r.real()) && std::isfinite(r.imag())))
    throw OverflowError("poly_eval: result not representable in double precision");
  return r;
}

LogComplex poly_log_eval(const UniPoly& p, const LogComplex& z) {
  const int d = p.degree();
  if (d == 0) return LogComplex::from(p.coeff(0));
  const Complex c = p.leading();
  // |rest| < |lead|/2 must follow from coefficient magnitudes alone.
  double bound = 0.0;
  for (int i = 0; i < d; ++i)
    if (p.coeff(i) != Complex(0.0))
      bound += std::exp(std::log(std::abs(p.coeff(i) / c)) + (i - d) * z.logmod());
  if (!(bound < 0.5))
    throw DominanceNotReached("poly_log_eval: leading term does not dominate at this modulus");
  Complex rho = 0.0;
  for (int i = 0; i < d; ++i)
    if (p.coeff(i) != Complex(0.0))
      rho += (LogComplex::from(p.coeff(i) / c) * z.pow(i - d)).to_complex();
  const LogComplex lead = LogComplex::from(c) * z.pow(d);
  const double lm = 0.5 * std::log1p(2.0 * rho.real() + std::norm(rho));
  return LogComplex(lead.logmod() + lm, lead.arg() + std::arg(1.0 + rho));
}

ParamPolynomial::ParamPolynomial(std::vector<UniPoly> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

ParamPolynomial ParamPolynomial::constant_in_lambda(const UniPoly& p) {
  std::vector<UniPoly> v;
  for (const auto& c : p.coeffs()) v.push_back(UniPoly({c}));
  return ParamPolynomial(std::move(v));
}

int ParamPolynomial::lambda_degree() const {
  int m = 0;
  for (const auto& c : coeffs_) m = std::max(m, c.degree());
  return m;
}

bool ParamPolynomial::leading_is_constant() const {
  return !coeffs_.empty() && coeffs_.back().degree() == 0 && !coeffs_.back().is_zero();
}

UniPoly ParamPolynomial::at(Complex lambda) const {
  std::vector<Complex> v;
  for (const auto& c : coeffs_) v.push_back(c(lambda));
  return UniPoly(std::move(v));
}

ParamPolynomial ParamPolynomial::scaled_lambda(Complex s) const {
  std::vector<UniPoly> v;
  for (const auto& c : coeffs_) v.push_back(c.scaled_argument(s));
  return ParamPolynomial(std::move(v));
}

}  // namespace polyauto

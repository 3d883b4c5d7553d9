#include "polyauto/complex.hpp"

#include <algorithm>

namespace polyauto {

double wrap_arg(double a) {
  if (!std::isfinite(a)) return a;
  if (a > -kPi && a <= kPi) return a;
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  if (r > kPi) r -= kTwoPi;
  return r;
}

double sup_norm(const ComplexVector& z) {
  double m = 0.0;
  for (const auto& c : z) m = std::max(m, std::abs(c));
  return m;
}

LogComplex::LogComplex(double logmod, double arg) : logmod_(logmod), arg_(wrap_arg(arg)) {
  if (is_zero()) arg_ = 0.0;
}

LogComplex LogComplex::from(Complex z) {
  if (z == Complex(0.0, 0.0)) return {};
  return {std::log(std::abs(z)), std::arg(z)};
}

Complex LogComplex::to_complex() const {
  if (is_zero()) return 0.0;
  return std::polar(std::exp(logmod_), arg_);
}

LogComplex LogComplex::operator-() const {
  if (is_zero()) return *this;
  return {logmod_, arg_ + kPi};
}

LogComplex LogComplex::pow(int n) const {
  if (n == 0) return {0.0, 0.0};
  if (is_zero()) return n > 0 ? *this : LogComplex(std::numeric_limits<double>::infinity(), 0.0);
  return {logmod_ * n, arg_ * n};
}

LogComplex operator*(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return {a.logmod_ + b.logmod_, a.arg_ + b.arg_};
}

LogComplex operator/(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero()) return {};
  return {a.logmod_ - b.logmod_, a.arg_ - b.arg_};
}

LogComplex operator+(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const LogComplex& big = a.logmod_ >= b.logmod_ ? a : b;
  const LogComplex& small = a.logmod_ >= b.logmod_ ? b : a;
  const Complex r = std::polar(std::exp(small.logmod_ - big.logmod_), small.arg_ - big.arg_);
  const Complex s = 1.0 + r;
  if (s == Complex(0.0, 0.0)) return {};
  const double lm = 0.5 * std::log1p(2.0 * r.real() + std::norm(r));
  return {big.logmod_ + lm, big.arg_ + std::arg(s)};
}

LogComplex operator-(const LogComplex& a, const LogComplex& b) { return a + (-b); }

}  // namespace polyauto

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace polyauto {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Maps any angle into (-pi, pi].
double wrap_arg(double a);

double sup_norm(const ComplexVector& z);

// exp(logmod) * e^{i arg}; zero is logmod = -inf.
class LogComplex {
 public:
  LogComplex() = default;
  LogComplex(double logmod, double arg);
  static LogComplex from(Complex z);
  static LogComplex zero() { return {}; }

  double logmod() const { return logmod_; }
  double arg() const { return arg_; }
  bool is_zero() const { return logmod_ == -std::numeric_limits<double>::infinity(); }
  bool finite() const { return std::isfinite(logmod_) || is_zero(); }

  // May overflow to inf for huge values.
  Complex to_complex() const;
  // Principal logarithm as a complex number.
  Complex log() const { return {logmod_, arg_}; }

  LogComplex operator-() const;
  LogComplex pow(int n) const;

  friend LogComplex operator*(const LogComplex& a, const LogComplex& b);
  friend LogComplex operator/(const LogComplex& a, const LogComplex& b);
  friend LogComplex operator+(const LogComplex& a, const LogComplex& b);
  friend LogComplex operator-(const LogComplex& a, const LogComplex& b);
  LogComplex& operator+=(const LogComplex& b) { return *this = *this + b; }
  LogComplex& operator*=(const LogComplex& b) { return *this = *this * b; }

 private:
  double logmod_ = -std::numeric_limits<double>::infinity();
  double arg_ = 0.0;
};

inline double log_abs(Complex z) { return std::log(std::abs(z)); }
inline double log_abs(const LogComplex& z) { return z.logmod(); }

inline Complex to_complex(Complex z) { return z; }
inline Complex to_complex(const LogComplex& z) { return z.to_complex(); }

template <class T>
T lift(Complex z);

template <>
inline Complex lift<Complex>(Complex z) {
  return z;
}

template <>
inline LogComplex lift<LogComplex>(Complex z) {
  return LogComplex::from(z);
}

inline Complex ipow(Complex z, int n) {
  Complex r = 1.0;
  Complex b = z;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

inline Complex power(Complex z, int n) { return n >= 0 ? ipow(z, n) : 1.0 / ipow(z, -n); }
inline LogComplex power(const LogComplex& z, int n) { return z.pow(n); }

}  // namespace polyauto

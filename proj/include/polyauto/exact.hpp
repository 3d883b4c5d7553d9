#pragma once

#include <gmpxx.h>

#include <array>
#include <string>

#include "polyauto/complex.hpp"

namespace polyauto {

// Element of Q(zeta), zeta = e^{2 pi i / 12}, in the basis 1, zeta, zeta^2, zeta^3.
// Contains the Gaussian rationals (i = zeta^3) and every 12th root of unity.
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(long n);  // NOLINT(google-explicit-constructor)
  explicit ExactComplex(const mpq_class& re);
  ExactComplex(const mpq_class& re, const mpq_class& im);

  // Exact binary-to-rational conversion of both components.
  static ExactComplex from_complex(Complex z);
  static ExactComplex root_of_unity(int k, int order = 12);
  static ExactComplex i();

  bool is_zero() const;
  bool is_one() const { return *this == ExactComplex(1); }
  bool is_gaussian() const { return c_[1] == 0 && c_[2] == 0; }

  ExactComplex conj() const { return galois(11); }
  ExactComplex galois(int k) const;
  ExactComplex inverse() const;
  ExactComplex pow(int n) const;
  bool is_unimodular() const { return (*this * conj()).is_one(); }

  Complex to_complex() const;
  std::string to_string() const;
  const std::array<mpq_class, 4>& components() const { return c_; }

  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b);
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b);
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b);
  friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) { return a * b.inverse(); }
  ExactComplex operator-() const;
  ExactComplex& operator+=(const ExactComplex& b);
  ExactComplex& operator-=(const ExactComplex& b);
  ExactComplex& operator*=(const ExactComplex& b) { return *this = *this * b; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

 private:
  std::array<mpq_class, 4> c_{};
};

}  // namespace polyauto

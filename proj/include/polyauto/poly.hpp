#pragma once

#include <vector>

#include "polyauto/complex.hpp"

namespace polyauto {

// Coefficients lowest degree first; trailing zeros are trimmed.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Complex> coeffs);
  static UniPoly monomial(Complex c, int degree);

  int degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int i) const;
  Complex leading() const { return coeffs_.empty() ? Complex(0.0) : coeffs_.back(); }
  // Sum of |c_i| over i < degree.
  double lower_order_mass() const;

  Complex operator()(Complex z) const;

  template <class T>
  T eval(const T& z) const {
    if (coeffs_.empty()) return lift<T>(0.0);
    T acc = lift<T>(coeffs_.back());
    for (int i = degree() - 1; i >= 0; --i) acc = acc * z + lift<T>(coeffs_[i]);
    return acc;
  }

  // Evaluates everything except the leading term.
  template <class T>
  T eval_lower(const T& z) const {
    if (coeffs_.size() < 2) return lift<T>(0.0);
    T acc = lift<T>(coeffs_[coeffs_.size() - 2]);
    for (int i = degree() - 2; i >= 0; --i) acc = acc * z + lift<T>(coeffs_[i]);
    return acc;
  }

  UniPoly derivative() const;
  UniPoly compose(const UniPoly& inner) const;
  UniPoly scaled_argument(Complex s) const;  // p(s z)

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(Complex s, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

Complex poly_eval(const UniPoly& p, Complex z);
LogComplex poly_log_eval(const UniPoly& p, const LogComplex& z);

// Polynomial in y whose coefficients are polynomials in lambda.
class ParamPolynomial {
 public:
  ParamPolynomial() = default;
  explicit ParamPolynomial(std::vector<UniPoly> coeffs);
  static ParamPolynomial constant_in_lambda(const UniPoly& p);

  int degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<UniPoly>& coeffs() const { return coeffs_; }
  const UniPoly& coeff(int i) const { return coeffs_.at(i); }
  int lambda_degree(int i) const { return coeffs_.at(i).degree(); }
  int lambda_degree() const;
  bool leading_is_constant() const;
  Complex leading() const { return coeffs_.empty() ? Complex(0.0) : coeffs_.back().coeff(0); }

  UniPoly at(Complex lambda) const;
  ParamPolynomial scaled_lambda(Complex s) const;  // lambda -> s lambda

  template <class T>
  T coeff_at(int i, const T& lambda) const {
    return coeffs_[i].eval(lambda);
  }

  template <class T>
  T eval(const T& lambda, const T& y) const {
    if (coeffs_.empty()) return lift<T>(0.0);
    T acc = coeff_at(degree(), lambda);
    for (int i = degree() - 1; i >= 0; --i) acc = acc * y + coeff_at(i, lambda);
    return acc;
  }

  template <class T>
  T eval_lower(const T& lambda, const T& y) const {
    if (coeffs_.size() < 2) return lift<T>(0.0);
    T acc = coeff_at(degree() - 1, lambda);
    for (int i = degree() - 2; i >= 0; --i) acc = acc * y + coeff_at(i, lambda);
    return acc;
  }

  friend bool operator==(const ParamPolynomial& a, const ParamPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<UniPoly> coeffs_;
};

}  // namespace polyauto

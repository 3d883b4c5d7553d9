#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "polyauto/complex.hpp"
#include "polyauto/multipoly.hpp"
#include "polyauto/poly.hpp"

namespace polyauto {

enum class Direction { Forward, Inverse };

inline Direction opposite(Direction d) {
  return d == Direction::Forward ? Direction::Inverse : Direction::Forward;
}
const char* to_string(Direction d);

// log(1 + r) and exp(c) - 1 without cancellation for small arguments.
Complex log1p_complex(Complex r);
Complex expm1_complex(Complex c);

class ShiftLikeMap {
 public:
  ShiftLikeMap(int k, int nu, Complex a, UniPoly p);

  int k() const { return k_; }
  int nu() const { return nu_; }
  Complex a() const { return a_; }
  const UniPoly& p() const { return p_; }
  int degree() const { return p_.degree(); }
  Complex leading() const { return p_.leading(); }
  int m() const { return m_; }
  // S^nu forward, S^{-(k-nu)} inverse.
  int block(Direction dir) const { return dir == Direction::Forward ? nu_ : k_ - nu_; }
  // 0-based coordinates dominating the plus (forward) or minus (inverse) sectors.
  int first_sector(Direction dir) const { return dir == Direction::Forward ? k_ - nu_ : 0; }
  int last_sector(Direction dir) const { return dir == Direction::Forward ? k_ - 1 : k_ - nu_ - 1; }
  bool is_sector(int i, Direction dir) const { return i >= first_sector(dir) && i <= last_sector(dir); }
  // Multiplier of the dominant coordinate per block: c_d forward, -c_d/a inverse.
  Complex block_multiplier(Direction dir) const;

  ComplexVector apply(const ComplexVector& z, Direction dir) const;

  template <class T>
  void single_step(std::vector<T>& z, Direction dir) const;

  // One block; when target >= 0 the correction log(1 + rho) of that coordinate is stored in corr.
  template <class T>
  void block_step(std::vector<T>& z, Direction dir, int target, Complex* corr, double* max_rho = nullptr) const;

  friend bool operator==(const ShiftLikeMap& a, const ShiftLikeMap& b) {
    return a.k_ == b.k_ && a.nu_ == b.nu_ && a.a_ == b.a_ && a.p_ == b.p_;
  }

 private:
  int k_;
  int nu_;
  Complex a_;
  UniPoly p_;
  int m_;
};

ComplexVector shift_apply(const ShiftLikeMap& S, const ComplexVector& z, Direction dir);

struct ShiftIterate {
  bool log_space = false;
  ComplexVector z;               // valid when !log_space
  std::vector<LogComplex> zl;    // always filled
  std::vector<int> dominance_entry;  // first step at which coordinate i was the strict maximum, -1 if never
};

ShiftIterate shift_iterate(const ShiftLikeMap& S, const ComplexVector& z, int n);

struct HenonFactor {
  ParamPolynomial p;
  Complex delta;

  int degree() const { return p.degree(); }
  Complex leading() const { return p.leading(); }
  friend bool operator==(const HenonFactor& a, const HenonFactor& b) {
    return a.p == b.p && a.delta == b.delta;
  }
};

void validate_factors(const std::vector<HenonFactor>& factors);

struct FiberConstants {
  int d = 1;
  Complex c_H = 1.0;
  Complex c_H_prime = 1.0;
};

FiberConstants fiber_constants(const std::vector<HenonFactor>& factors);

// H_lambda = H_m o ... o H_1 applied to (x, y); corr accumulates log(y_out / (c_H y^d)).
template <class T>
void fiber_forward(const std::vector<HenonFactor>& factors, const T& lambda, T& x, T& y, Complex* corr,
                  double* max_rho = nullptr);
// H_lambda^{-1}; corr accumulates log(x_out / (c_H' x^d)).
template <class T>
void fiber_inverse(const std::vector<HenonFactor>& factors, const T& lambda, T& x, T& y, Complex* corr,
                  double* max_rho = nullptr);

enum class CCase { Expanding, Contracting, Neutral };

class SkewHenonMap {
 public:
  SkewHenonMap(Complex c, std::vector<HenonFactor> factors);

  Complex c() const { return c_; }
  const std::vector<HenonFactor>& factors() const { return factors_; }
  int d() const { return k_.d; }
  int dtilde() const { return dtilde_; }
  Complex c_H() const { return k_.c_H; }
  Complex c_H_prime() const { return k_.c_H_prime; }
  // Total degree of the x-coordinate of the inverse, computed symbolically.
  int dtilde_inverse() const { return dtilde_inverse_; }
  int last_degree() const { return factors_.back().degree(); }
  CCase c_case() const;

  ComplexVector apply(const ComplexVector& P, Direction dir) const;
  // Exact (lambda, x, y) coordinates of H or H^{-1}.
  const PolyMap& symbolic(Direction dir) const;
  // H^n as a skew map with n * m factors.
  SkewHenonMap iterate_map(int n) const;

  friend bool operator==(const SkewHenonMap& a, const SkewHenonMap& b) {
    return a.c_ == b.c_ && a.factors_ == b.factors_;
  }

 private:
  Complex c_;
  std::vector<HenonFactor> factors_;
  FiberConstants k_;
  int dtilde_ = 0;
  int dtilde_inverse_ = 0;
  std::shared_ptr<const PolyMap> forward_;
  std::shared_ptr<const PolyMap> inverse_;
};

struct StructureConstants {
  int d;
  int dtilde;
  Complex c_H;
  Complex c_H_prime;
};

StructureConstants structure_constants(const SkewHenonMap& H);

class FiberedSkewHenon {
 public:
  FiberedSkewHenon(double theta, std::vector<HenonFactor> factors);

  double theta() const { return theta_; }
  const std::vector<HenonFactor>& factors() const { return factors_; }
  int d() const { return k_.d; }
  Complex c_H() const { return k_.c_H; }
  Complex c_H_prime() const { return k_.c_H_prime; }

  static double base_of(Complex lambda);
  static Complex lambda_of(double t);
  double rotate(double t, Direction dir) const;

  // P = (lambda, x, y) with |lambda| = 1.
  ComplexVector apply(const ComplexVector& P, Direction dir) const;
  const PolyMap& symbolic(Direction dir) const;

  friend bool operator==(const FiberedSkewHenon& a, const FiberedSkewHenon& b) {
    return a.theta_ == b.theta_ && a.factors_ == b.factors_;
  }

 private:
  double theta_;
  std::vector<HenonFactor> factors_;
  FiberConstants k_;
  std::shared_ptr<const PolyMap> forward_;
  std::shared_ptr<const PolyMap> inverse_;
};

using AnyMap = std::variant<ShiftLikeMap, SkewHenonMap, FiberedSkewHenon>;

std::string family_name(const AnyMap& map);
int dimension(const AnyMap& map);
ComplexVector apply(const AnyMap& map, const ComplexVector& P, Direction dir);
// Degree of the normalization: d_p for shifts, d for the Henon families.
int green_degree(const AnyMap& map);

inline constexpr int kDefaultDegreeBudget = 3;
PolyMap to_multipoly(const AnyMap& map, int n, int budget = kDefaultDegreeBudget);
PolyMap to_multipoly(const ShiftLikeMap& S, int n, int budget = kDefaultDegreeBudget);

class DiagonalMap {
 public:
  DiagonalMap() = default;
  explicit DiagonalMap(std::vector<ExactComplex> entries);
  static DiagonalMap identity(int n);

  const std::vector<ExactComplex>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  std::vector<bool> unimodular() const;
  ComplexVector apply(const ComplexVector& z) const;
  PolyMap as_polymap() const;

 private:
  std::vector<ExactComplex> entries_;
};

// ---- template implementations ----

template <class T>
void ShiftLikeMap::single_step(std::vector<T>& z, Direction dir) const {
  const T ta = lift<T>(a_);
  if (dir == Direction::Forward) {
    T last = ta * z[0] + p_.eval(z[k_ - nu_]);
    for (int j = 0; j + 1 < k_; ++j) z[j] = z[j + 1];
    z[k_ - 1] = last;
  } else {
    T first = (z[k_ - 1] - p_.eval(z[k_ - nu_ - 1])) / ta;
    for (int j = k_ - 1; j > 0; --j) z[j] = z[j - 1];
    z[0] = first;
  }
}

template <class T>
void ShiftLikeMap::block_step(std::vector<T>& z, Direction dir, int target, Complex* corr, double* max_rho) const {
  const int d = degree();
  const T c = lift<T>(leading());
  std::vector<T> out(k_);
  if (dir == Direction::Forward) {
    const T ta = lift<T>(a_);
    for (int j = 0; j < k_ - nu_; ++j) out[j] = z[j + nu_];
    for (int j = k_ - nu_; j < k_; ++j) {
      const T lead = c * power(z[j], d);
      const T num = ta * z[j - (k_ - nu_)] + p_.eval_lower(z[j]);
      out[j] = lead + num;
      if (j == target && corr) {
        const Complex r = to_complex(num / lead);
        *corr = log1p_complex(r);
        if (max_rho) *max_rho = std::abs(r);
      }
    }
  } else {
    const T inv_a = lift<T>(1.0 / a_);
    const T minus_lead_c = lift<T>(-leading() / a_);
    for (int j = 0; j < k_ - nu_; ++j) {
      const T lead = minus_lead_c * power(z[j], d);
      const T num = inv_a * (z[j + nu_] - p_.eval_lower(z[j]));
      out[j] = lead + num;
      if (j == target && corr) {
        const Complex r = to_complex(num / lead);
        *corr = log1p_complex(r);
        if (max_rho) *max_rho = std::abs(r);
      }
    }
    for (int j = k_ - nu_; j < k_; ++j) out[j] = z[j - (k_ - nu_)];
  }
  z = std::move(out);
}

template <class T>
void fiber_forward(const std::vector<HenonFactor>& factors, const T& lambda, T& x, T& y, Complex* corr, double* max_rho) {
  int D = 1;
  for (const auto& f : factors) D *= f.degree();
  Complex acc = 0.0;
  if (max_rho) *max_rho = 0.0;
  for (const auto& f : factors) {
    const int dj = f.degree();
    D /= dj;
    const T lead = lift<T>(f.leading()) * power(y, dj);
    const T num = f.p.eval_lower(lambda, y) - lift<T>(f.delta) * x;
    const T ny = lead + num;
    if (corr) {
      const Complex r = to_complex(num / lead);
      acc += static_cast<double>(D) * log1p_complex(r);
      if (max_rho) *max_rho = std::max(*max_rho, std::abs(r));
    }
    x = y;
    y = ny;
  }
  if (corr) *corr = acc;
}

template <class T>
void fiber_inverse(const std::vector<HenonFactor>& factors, const T& lambda, T& x, T& y, Complex* corr, double* max_rho) {
  int D = 1;
  for (const auto& f : factors) D *= f.degree();
  Complex acc = 0.0;
  if (max_rho) *max_rho = 0.0;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const int dj = it->degree();
    D /= dj;
    const T inv_delta = lift<T>(1.0 / it->delta);
    const T lead = lift<T>(it->leading() / it->delta) * power(x, dj);
    const T num = inv_delta * (it->p.eval_lower(lambda, x) - y);
    const T nx = lead + num;
    if (corr) {
      const Complex r = to_complex(num / lead);
      acc += static_cast<double>(D) * log1p_complex(r);
      if (max_rho) *max_rho = std::max(*max_rho, std::abs(r));
    }
    y = x;
    x = nx;
  }
  if (corr) *corr = acc;
}

}  // namespace polyauto

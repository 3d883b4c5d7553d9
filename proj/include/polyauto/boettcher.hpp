#pragma once

#include <vector>

#include "polyauto/green.hpp"

namespace polyauto {

struct BoettcherValue {
  LogComplex value;
  Complex log_value;            // continuous log of the value
  std::vector<Complex> partials;  // log phi at depths 0..depth
  int depth = 0;
  int target = -1;
  double truncation = 0.0;
  bool branch_ok = true;  // every factor correction inside the unit disk about 1
  double max_rho = 0.0;
  bool valid() const { return branch_ok; }
};

// phi o map = kappa * phi^D; the log of kappa uses the principal branch of the lead.
struct BoettcherConstants {
  Complex log_kappa;
  int D = 2;
  int q = 1;  // root-of-unity ambiguity when dtilde does not divide d
  double exponent = 1.0;  // phi ~ target^exponent
};
BoettcherConstants boettcher_constants(const OrbitEngine& engine);

BoettcherValue boettcher(const OrbitEngine& engine, const ComplexVector& P, int n = 8);
BoettcherValue boettcher(const AnyMap& map, const ComplexVector& P, Direction dir, int n = 8, OrbitOptions opt = {});
BoettcherValue boettcher_shift(const ShiftLikeMap& S, int i, const ComplexVector& z, Direction dir, int n = 8,
                               OrbitOptions opt = {});
BoettcherValue boettcher_skew(const SkewHenonMap& H, const ComplexVector& P, Direction dir, int n = 8,
                              OrbitOptions opt = {});
BoettcherValue boettcher_fibered(const FiberedSkewHenon& F, Complex lambda, Complex x, Complex y, Direction dir,
                                 int n = 8, OrbitOptions opt = {});

// |phi(map P) / (kappa phi(P)^D) - 1| at matched depth n.
double functional_residual(const OrbitEngine& engine, const ComplexVector& P, int n = 8);
// |phi(P) / target^exponent - 1|
double asymptotic_error(const OrbitEngine& engine, const ComplexVector& P, int n = 8);

struct Crosscheck {
  std::vector<double> discrepancy;  // depths 0..n
  double floor = 0.0;               // rounding level of the compared quantities
  double at_depth() const { return discrepancy.empty() ? 0.0 : discrepancy.back(); }
  bool decreasing() const;
};
Crosscheck green_crosscheck(const OrbitEngine& engine, const ComplexVector& P, int n = 8);

}  // namespace polyauto

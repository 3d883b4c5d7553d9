#pragma once

#include <vector>

#include "polyauto/maps.hpp"

namespace testing {

using namespace polyauto;

// Coefficients of y^0, y^1, ... each given as lambda coefficients.
inline ParamPolynomial param(std::vector<std::vector<Complex>> c) {
  std::vector<UniPoly> u;
  for (auto& v : c) u.emplace_back(std::move(v));
  return ParamPolynomial(std::move(u));
}

// (lambda, x, y) -> (2 lambda, y, y^2 - x)
inline SkewHenonMap simple_henon() { return SkewHenonMap(2.0, {HenonFactor{param({{0}, {0}, {1}}), 1.0}}); }

// (z1, z2, z3) -> (z2, z3, z1 + z3^2)
inline ShiftLikeMap simple_shift() { return ShiftLikeMap(3, 1, 1.0, UniPoly({0, 0, 1})); }

inline FiberedSkewHenon simple_fibered() {
  return FiberedSkewHenon(0.381966011250105, {HenonFactor{param({{0, 0.1}, {0}, {1}}), 1.0}});
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace testing

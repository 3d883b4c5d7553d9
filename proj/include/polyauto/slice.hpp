#pragma once

#include <string>
#include <vector>

#include "polyauto/complex.hpp"

namespace polyauto {

struct SliceAxis {
  int coord = 0;
  bool imag = false;
  double min = -1.0;
  double max = 1.0;
  int res = 2;
  double at(int i) const { return min + (max - min) * i / (res - 1); }
};

// Two real sweep axes through a fixed point of C^dim.
struct SliceSpec {
  int dim = 0;
  SliceAxis axis1;
  SliceAxis axis2;
  ComplexVector fixed;

  void validate() const;
  std::size_t pixels() const { return static_cast<std::size_t>(axis1.res) * axis2.res; }
  // Row-major pixel order, row 0 at the top (largest axis2 value).
  ComplexVector point(std::size_t pixel) const;
  double value1(std::size_t pixel) const;
  double value2(std::size_t pixel) const;
};

// "C.re:min:max:res,C.im:min:max:res" optionally followed by "@re:im,re:im,..." for the fixed point,
// or a JSON object with keys dim, axes, fixed.
SliceSpec parse_slice(const std::string& text, int dim);

// "re,re:im,..." with one entry per coordinate.
ComplexVector parse_point(const std::string& text, int dim);

}  // namespace polyauto

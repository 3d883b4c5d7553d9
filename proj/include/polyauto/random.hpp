#pragma once

#include <cstdint>
#include <random>

#include "polyauto/complex.hpp"

namespace polyauto {

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream per (seed, stream id) so parallel sampling is order-free.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi);
  double angle() { return kTwoPi * uniform(); }
  Complex polar(double radius) { return std::polar(radius, angle()); }
  // Modulus in [0, bound) with a quarter of the mass pressed against the bound.
  double inner_radius(double bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace polyauto

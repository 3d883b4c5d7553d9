#include "polyauto/random.hpp"

namespace polyauto {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::log_uniform(double lo, double hi) { return lo * std::exp(uniform() * std::log(hi / lo)); }

double Rng::inner_radius(double bound) {
  if (uniform() < 0.25) return bound * (1.0 - 1e-3 * uniform()) * (1.0 - 1e-12);
  return bound * uniform();
}

}  // namespace polyauto

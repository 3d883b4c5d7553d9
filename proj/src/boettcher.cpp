#include "polyauto/boettcher.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "polyauto/errors.hpp"

namespace polyauto {

namespace {

Complex principal_log(Complex z) { return {std::log(std::abs(z)), std::arg(z)}; }

Complex log_of(const LogComplex& z) { return {z.logmod(), z.arg()}; }

// Imaginary part reduced to (-pi/q, pi/q].
Complex reduce_arg(Complex z, int q) {
  const double period = kTwoPi / q;
  double im = std::remainder(z.imag(), period);
  if (im <= -0.5 * period) im += period;
  return {z.real(), im};
}

}  // namespace

BoettcherConstants boettcher_constants(const OrbitEngine& engine) {
  BoettcherConstants k;
  k.D = engine.degree();
  if (const auto* H = std::get_if<SkewHenonMap>(&engine.map())) {
    const int g = std::gcd(H->d(), H->dtilde());
    k.q = H->dtilde() / g;
    k.exponent = static_cast<double>(H->d()) / H->dtilde();
  }
  k.log_kappa = k.exponent * principal_log(engine.lead());
  return k;
}

BoettcherValue boettcher(const OrbitEngine& engine, const ComplexVector& P, int n) {
  if (n < 0) throw InputError("depth must be non-negative");
  const OrbitRecord rec = engine.trace(P, n);
  if (!rec.escape_index || *rec.escape_index != 0)
    throw SectorViolation("point is not in the escaping region of the requested direction");
  if (rec.length() <= n) throw DominanceNotReached("orbit left the representable range before the requested depth");
  const BoettcherConstants k = boettcher_constants(engine);
  const double D = k.D;

  BoettcherValue v;
  v.target = rec.target;
  v.depth = n;
  Complex acc = k.exponent * log_of(rec.targets[0]);
  v.partials.push_back(acc);
  double w = k.exponent / D;
  for (int j = 0; j < n; ++j) {
    acc += w * rec.corrections[j];
    v.partials.push_back(acc);
    v.max_rho = std::max(v.max_rho, rec.rho[j]);
    if (!(rec.rho[j] < 1.0)) v.branch_ok = false;
    if (j == n - 1) v.truncation = w * std::abs(rec.corrections[j]) / (D - 1.0);
    w /= D;
  }
  if (rec.region_violations > 0) v.branch_ok = false;
  v.log_value = acc;
  v.value = LogComplex(acc.real(), acc.imag());
  return v;
}

BoettcherValue boettcher(const AnyMap& map, const ComplexVector& P, Direction dir, int n, OrbitOptions opt) {
  return boettcher(OrbitEngine(map, dir, opt), P, n);
}

BoettcherValue boettcher_shift(const ShiftLikeMap& S, int i, const ComplexVector& z, Direction dir, int n,
                               OrbitOptions opt) {
  if (!S.is_sector(i, dir)) throw InputError("sector index does not belong to the requested direction");
  BoettcherValue v = boettcher(OrbitEngine(S, dir, opt), z, n);
  if (v.target != i) throw SectorViolation("point lies in a different sector");
  return v;
}

BoettcherValue boettcher_skew(const SkewHenonMap& H, const ComplexVector& P, Direction dir, int n, OrbitOptions opt) {
  return boettcher(OrbitEngine(H, dir, opt), P, n);
}

BoettcherValue boettcher_fibered(const FiberedSkewHenon& F, Complex lambda, Complex x, Complex y, Direction dir,
                                 int n, OrbitOptions opt) {
  return boettcher(OrbitEngine(F, dir, opt), {lambda, x, y}, n);
}

double functional_residual(const OrbitEngine& engine, const ComplexVector& P, int n) {
  const BoettcherConstants k = boettcher_constants(engine);
  const BoettcherValue here = boettcher(engine, P, n);
  const BoettcherValue there = boettcher(engine, engine.apply_block(P), n);
  const Complex delta = there.log_value - k.log_kappa - static_cast<double>(k.D) * here.log_value;
  return std::abs(expm1_complex(reduce_arg(delta, k.q)));
}

double asymptotic_error(const OrbitEngine& engine, const ComplexVector& P, int n) {
  const BoettcherConstants k = boettcher_constants(engine);
  const BoettcherValue v = boettcher(engine, P, n);
  const Complex delta = v.log_value - k.exponent * principal_log(P[v.target]);
  return std::abs(expm1_complex(reduce_arg(delta, k.q)));
}

bool Crosscheck::decreasing() const {
  for (size_t i = 1; i < discrepancy.size(); ++i)
    if (discrepancy[i] > std::max(discrepancy[i - 1], floor)) return false;
  return true;
}

Crosscheck green_crosscheck(const OrbitEngine& engine, const ComplexVector& P, int n) {
  const BoettcherValue v = boettcher(engine, P, n);
  const OrbitRecord rec = engine.trace(P, n);
  const double D = engine.degree();
  const double log_lead = std::log(std::abs(engine.lead()));
  const double constant = boettcher_constants(engine).log_kappa.real() / (D - 1.0);
  Crosscheck c;
  double scale = 1.0;
  for (int j = 0; j <= n; ++j) {
    const double g = green_at(engine, rec, j) + log_lead * std::exp(-engine.log_normalization(j)) / (D - 1.0);
    scale = std::max(scale, std::abs(g));
    c.discrepancy.push_back(std::abs(g - v.partials[j].real() - constant));
  }
  c.floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  return c;
}

}  // namespace polyauto

#include "polyauto/maps.hpp"

#include <numeric>

#include "polyauto/errors.hpp"

namespace polyauto {

namespace {

constexpr double kOverflowSwitch = 1e100;

const ExactComplex& exact_one() {
  static const ExactComplex one(1);
  return one;
}

// a_i(lambda) as a polynomial in the 3 variables (lambda, x, y), with lambda -> s * lambda.
MultiPoly lambda_coefficient(const UniPoly& a, const ExactComplex& s) {
  MultiPoly r(3);
  ExactComplex sp = exact_one();
  for (int l = 0; l < static_cast<int>(a.coeffs().size()); ++l) {
    r.add_term({l, 0, 0}, ExactComplex::from_complex(a.coeffs()[l]) * sp);
    sp *= s;
  }
  return r;
}

// P(s * lambda, v) with v a polynomial in (lambda, x, y).
MultiPoly param_compose(const ParamPolynomial& p, const ExactComplex& s, const MultiPoly& v) {
  MultiPoly acc = lambda_coefficient(p.coeff(p.degree()), s);
  for (int i = p.degree() - 1; i >= 0; --i) acc = acc * v + lambda_coefficient(p.coeff(i), s);
  return acc;
}

// Symbolic fiber map on (lambda, x, y); fibers are evaluated at s * lambda and the base coordinate is base * lambda.
PolyMap symbolic_fiber(const std::vector<HenonFactor>& factors, const ExactComplex& base, const ExactComplex& s,
                       Direction dir) {
  MultiPoly lam = MultiPoly::variable(3, 0);
  MultiPoly X = MultiPoly::variable(3, 1);
  MultiPoly Y = MultiPoly::variable(3, 2);
  if (dir == Direction::Forward) {
    for (const auto& f : factors) {
      MultiPoly nY = param_compose(f.p, s, Y) - X.scaled(ExactComplex::from_complex(f.delta));
      X = std::move(Y);
      Y = std::move(nY);
    }
  } else {
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      const ExactComplex inv_delta = ExactComplex::from_complex(it->delta).inverse();
      MultiPoly nX = (param_compose(it->p, s, X) - Y).scaled(inv_delta);
      Y = std::move(X);
      X = std::move(nX);
    }
  }
  return {lam.scaled(base), X, Y};
}

}  // namespace

const char* to_string(Direction d) { return d == Direction::Forward ? "forward" : "inverse"; }

Complex log1p_complex(Complex r) {
  const double re = 0.5 * std::log1p(2.0 * r.real() + std::norm(r));
  const double im = std::atan2(r.imag(), 1.0 + r.real());
  return {re, im};
}

Complex expm1_complex(Complex c) {
  const double s = std::sin(0.5 * c.imag());
  const double re = std::expm1(c.real()) * std::cos(c.imag()) - 2.0 * s * s;
  const double im = std::exp(c.real()) * std::sin(c.imag());
  return {re, im};
}

ShiftLikeMap::ShiftLikeMap(int k, int nu, Complex a, UniPoly p)
    : k_(k), nu_(nu), a_(a), p_(std::move(p)) {
  if (k_ < 3) throw InputError("shift-like map needs k >= 3");
  if (nu_ < 1 || nu_ > k_ - 1) throw InputError("shift-like map needs 1 <= nu <= k-1");
  if (a_ == 0.0) throw InputError("shift-like map needs a != 0");
  if (p_.degree() < 2) throw InputError("shift-like map needs deg p >= 2");
  m_ = std::lcm(nu_, k_ - nu_);
}

Complex ShiftLikeMap::block_multiplier(Direction dir) const {
  return dir == Direction::Forward ? leading() : -leading() / a_;
}

ComplexVector ShiftLikeMap::apply(const ComplexVector& z, Direction dir) const {
  if (static_cast<int>(z.size()) != k_) throw ArityMismatch("point dimension does not match k");
  ComplexVector r = z;
  single_step(r, dir);
  return r;
}

ComplexVector shift_apply(const ShiftLikeMap& S, const ComplexVector& z, Direction dir) { return S.apply(z, dir); }

ShiftIterate shift_iterate(const ShiftLikeMap& S, const ComplexVector& z, int n) {
  if (static_cast<int>(z.size()) != S.k()) throw ArityMismatch("point dimension does not match k");
  const Direction dir = n >= 0 ? Direction::Forward : Direction::Inverse;
  const int steps = std::abs(n);
  ShiftIterate out;
  out.dominance_entry.assign(S.k(), -1);
  auto mark = [&](const std::vector<double>& logs, int step) {
    int best = 0;
    for (int i = 1; i < S.k(); ++i)
      if (logs[i] > logs[best]) best = i;
    for (int i = 0; i < S.k(); ++i)
      if (i != best && logs[i] == logs[best]) return;
    if (out.dominance_entry[best] < 0) out.dominance_entry[best] = step;
  };
  auto logs_of = [&](const auto& v) {
    std::vector<double> l;
    for (const auto& c : v) l.push_back(log_abs(c));
    return l;
  };

  ComplexVector w = z;
  std::vector<LogComplex> wl;
  bool log_space = false;
  mark(logs_of(w), 0);
  for (int s = 1; s <= steps; ++s) {
    if (!log_space) {
      ComplexVector next = w;
      S.single_step(next, dir);
      bool overflow = false;
      for (const auto& c : next)
        if (!(std::abs(c) <= kOverflowSwitch)) overflow = true;
      if (!overflow) {
        w = std::move(next);
        mark(logs_of(w), s);
        continue;
      }
      log_space = true;
      for (const auto& c : w) wl.push_back(LogComplex::from(c));
    }
    S.single_step(wl, dir);
    for (const auto& c : wl)
      if (!c.finite()) throw DominanceNotReached("log-space orbit lost finiteness");
    mark(logs_of(wl), s);
  }
  out.log_space = log_space;
  if (log_space) {
    out.zl = std::move(wl);
  } else {
    out.z = w;
    for (const auto& c : w) out.zl.push_back(LogComplex::from(c));
  }
  return out;
}

void validate_factors(const std::vector<HenonFactor>& factors) {
  if (factors.empty()) throw InputError("a Henon map needs at least one factor");
  for (const auto& f : factors) {
    if (f.degree() < 2) throw InputError("Henon factor degree must be >= 2");
    if (!f.p.leading_is_constant()) throw InputError("Henon factor leading coefficient must not depend on lambda");
    if (f.leading() == 0.0) throw InputError("Henon factor leading coefficient must be nonzero");
    if (f.delta == 0.0) throw InputError("Henon factor needs delta != 0");
  }
}

FiberConstants fiber_constants(const std::vector<HenonFactor>& factors) {
  FiberConstants k;
  for (const auto& f : factors) k.d *= f.degree();
  int D = k.d;
  int Dp = 1;
  for (const auto& f : factors) {
    D /= f.degree();
    k.c_H *= ipow(f.leading(), D);
    k.c_H_prime *= ipow(f.leading() / f.delta, Dp);
    Dp *= f.degree();
  }
  return k;
}

SkewHenonMap::SkewHenonMap(Complex c, std::vector<HenonFactor> factors) : c_(c), factors_(std::move(factors)) {
  if (c_ == 0.0) throw InputError("skew Henon map needs c != 0");
  validate_factors(factors_);
  k_ = fiber_constants(factors_);
  const ExactComplex ec = ExactComplex::from_complex(c_);
  forward_ = std::make_shared<const PolyMap>(symbolic_fiber(factors_, ec, exact_one(), Direction::Forward));
  const ExactComplex ic = ec.inverse();
  inverse_ = std::make_shared<const PolyMap>(symbolic_fiber(factors_, ic, ic, Direction::Inverse));
  dtilde_ = (*forward_)[2].total_degree();
  dtilde_inverse_ = (*inverse_)[1].total_degree();
}

CCase SkewHenonMap::c_case() const {
  const double m = std::abs(c_);
  if (m > 1.0) return CCase::Expanding;
  if (m < 1.0) return CCase::Contracting;
  return CCase::Neutral;
}

ComplexVector SkewHenonMap::apply(const ComplexVector& P, Direction dir) const {
  if (P.size() != 3) throw ArityMismatch("skew Henon point must be (lambda, x, y)");
  Complex x = P[1];
  Complex y = P[2];
  if (dir == Direction::Forward) {
    fiber_forward(factors_, P[0], x, y, nullptr);
    return {c_ * P[0], x, y};
  }
  const Complex lam = P[0] / c_;
  fiber_inverse(factors_, lam, x, y, nullptr);
  return {lam, x, y};
}

const PolyMap& SkewHenonMap::symbolic(Direction dir) const {
  return dir == Direction::Forward ? *forward_ : *inverse_;
}

SkewHenonMap SkewHenonMap::iterate_map(int n) const {
  if (n < 1) throw InputError("iterate_map needs n >= 1");
  std::vector<HenonFactor> all;
  Complex s = 1.0;
  for (int t = 0; t < n; ++t) {
    for (const auto& f : factors_) all.push_back({f.p.scaled_lambda(s), f.delta});
    s *= c_;
  }
  return {s, std::move(all)};
}

StructureConstants structure_constants(const SkewHenonMap& H) {
  return {H.d(), H.dtilde(), H.c_H(), H.c_H_prime()};
}

FiberedSkewHenon::FiberedSkewHenon(double theta, std::vector<HenonFactor> factors)
    : theta_(theta), factors_(std::move(factors)) {
  if (!(theta_ >= 0.0 && theta_ < 1.0)) throw InputError("rotation angle must lie in [0, 1)");
  validate_factors(factors_);
  k_ = fiber_constants(factors_);
  const ExactComplex omega = ExactComplex::from_complex(lambda_of(theta_));
  const ExactComplex inv = omega.inverse();
  forward_ = std::make_shared<const PolyMap>(symbolic_fiber(factors_, omega, exact_one(), Direction::Forward));
  inverse_ = std::make_shared<const PolyMap>(symbolic_fiber(factors_, inv, inv, Direction::Inverse));
}

double FiberedSkewHenon::base_of(Complex lambda) {
  double t = std::arg(lambda) / kTwoPi;
  if (t < 0.0) t += 1.0;
  if (t >= 1.0) t -= 1.0;
  return t;
}

Complex FiberedSkewHenon::lambda_of(double t) { return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)}; }

double FiberedSkewHenon::rotate(double t, Direction dir) const {
  double r = dir == Direction::Forward ? t + theta_ : t - theta_;
  r -= std::floor(r);
  if (r >= 1.0) r = 0.0;
  return r;
}

ComplexVector FiberedSkewHenon::apply(const ComplexVector& P, Direction dir) const {
  if (P.size() != 3) throw ArityMismatch("fibered point must be (lambda, x, y)");
  const double t = base_of(P[0]);
  Complex x = P[1];
  Complex y = P[2];
  if (dir == Direction::Forward) {
    fiber_forward(factors_, P[0], x, y, nullptr);
    return {lambda_of(rotate(t, dir)), x, y};
  }
  const Complex lam = lambda_of(rotate(t, dir));
  fiber_inverse(factors_, lam, x, y, nullptr);
  return {lam, x, y};
}

const PolyMap& FiberedSkewHenon::symbolic(Direction dir) const {
  return dir == Direction::Forward ? *forward_ : *inverse_;
}

std::string family_name(const AnyMap& map) {
  switch (map.index()) {
    case 0: return "shift";
    case 1: return "skew-affine";
    default: return "skew-circle";
  }
}

int dimension(const AnyMap& map) {
  if (const auto* s = std::get_if<ShiftLikeMap>(&map)) return s->k();
  return 3;
}

ComplexVector apply(const AnyMap& map, const ComplexVector& P, Direction dir) {
  return std::visit([&](const auto& m) { return m.apply(P, dir); }, map);
}

int green_degree(const AnyMap& map) {
  return std::visit([](const auto& m) {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, ShiftLikeMap>) return m.degree();
    else return m.d();
  }, map);
}

PolyMap to_multipoly(const ShiftLikeMap& S, int n, int budget) {
  if (std::abs(n) > budget) throw DegreeBudgetExceeded("symbolic iterate exceeds the degree budget");
  const int k = S.k();
  PolyMap one(k, MultiPoly(k));
  const ExactComplex a = ExactComplex::from_complex(S.a());
  if (n >= 0) {
    for (int j = 0; j + 1 < k; ++j) one[j] = MultiPoly::variable(k, j + 1);
    MultiPoly w = MultiPoly::variable(k, k - S.nu());
    MultiPoly acc(k);
    const auto& c = S.p().coeffs();
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
      acc = acc * w + MultiPoly::constant(k, ExactComplex::from_complex(c[i]));
    one[k - 1] = MultiPoly::variable(k, 0).scaled(a) + acc;
  } else {
    for (int j = 1; j < k; ++j) one[j] = MultiPoly::variable(k, j - 1);
    MultiPoly w = MultiPoly::variable(k, k - S.nu() - 1);
    MultiPoly acc(k);
    const auto& c = S.p().coeffs();
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
      acc = acc * w + MultiPoly::constant(k, ExactComplex::from_complex(c[i]));
    one[0] = (MultiPoly::variable(k, k - 1) - acc).scaled(a.inverse());
  }
  PolyMap r = identity_map(k);
  for (int t = 0; t < std::abs(n); ++t) r = multipoly_compose(one, r);
  return r;
}

PolyMap to_multipoly(const AnyMap& map, int n, int budget) {
  if (const auto* s = std::get_if<ShiftLikeMap>(&map)) return to_multipoly(*s, n, budget);
  if (std::abs(n) > budget) throw DegreeBudgetExceeded("symbolic iterate exceeds the degree budget");
  const Direction dir = n >= 0 ? Direction::Forward : Direction::Inverse;
  const PolyMap& one = std::visit([&](const auto& m) -> const PolyMap& {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, ShiftLikeMap>) throw std::logic_error("unreachable");
    else return m.symbolic(dir);
  }, map);
  PolyMap r = identity_map(3);
  for (int t = 0; t < std::abs(n); ++t) r = multipoly_compose(one, r);
  return r;
}

DiagonalMap::DiagonalMap(std::vector<ExactComplex> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_)
    if (e.is_zero()) throw InputError("diagonal map entries must be nonzero");
}

DiagonalMap DiagonalMap::identity(int n) { return DiagonalMap(std::vector<ExactComplex>(n, ExactComplex(1))); }

std::vector<bool> DiagonalMap::unimodular() const {
  std::vector<bool> r;
  for (const auto& e : entries_) r.push_back(e.is_unimodular());
  return r;
}

ComplexVector DiagonalMap::apply(const ComplexVector& z) const {
  if (z.size() != entries_.size()) throw ArityMismatch("diagonal map dimension mismatch");
  ComplexVector r(z.size());
  for (size_t i = 0; i < z.size(); ++i) r[i] = entries_[i].to_complex() * z[i];
  return r;
}

PolyMap DiagonalMap::as_polymap() const {
  const int n = size();
  PolyMap r;
  for (int i = 0; i < n; ++i) r.push_back(MultiPoly::variable(n, i).scaled(entries_[i]));
  return r;
}

}  // namespace polyauto

#include "polyauto/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "polyauto/errors.hpp"
#include "polyauto/parallel.hpp"
#include "polyauto/random.hpp"

namespace polyauto {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSafety = 1.0 + 1e-12;

// Least R >= lo with ok(R), for a predicate that stays true once it holds.
double monotone_search(const std::function<bool(double)>& ok, double lo) {
  double hi = std::max(lo, 1.0);
  int guard = 0;
  while (!ok(hi)) {
    hi *= 2.0;
    if (++guard > 2000 || !std::isfinite(hi)) throw DominanceNotReached("threshold search did not terminate");
  }
  if (hi == lo) return hi;
  double a = std::max(lo, hi / 2.0);
  if (ok(a)) return a;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (a + hi);
    if (ok(mid)) hi = mid;
    else a = mid;
  }
  return hi;
}

double log_sum_exp2(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

struct ShiftCoeffs {
  int d;
  double c;  // |c_d|
  double S;  // sum_{i<d} |c_i|
  std::vector<double> mags;
};

ShiftCoeffs shift_coeffs(const ShiftLikeMap& S) {
  ShiftCoeffs r{S.degree(), std::abs(S.leading()), S.p().lower_order_mass(), {}};
  for (int i = 0; i < S.degree(); ++i) r.mags.push_back(std::abs(S.p().coeff(i)));
  return r;
}

double bracket_radius(const ShiftCoeffs& c, double eps) {
  double r = 1.0;
  if (c.S == 0.0) return r;
  for (int i = 0; i < c.d; ++i)
    if (c.mags[i] > 0.0) r = std::max(r, std::pow(c.S / eps, 1.0 / (c.d - i)));
  return r;
}

LambdaMode plus_mode(CCase c) { return c == CCase::Contracting ? LambdaMode::Bounded : LambdaMode::Coupled; }
LambdaMode minus_mode(CCase c) { return c == CCase::Expanding ? LambdaMode::Bounded : LambdaMode::Coupled; }

bool lambda_ok(double log_lambda, double log_dom, LambdaMode mode, int dtilde) {
  switch (mode) {
    case LambdaMode::Coupled: return (dtilde + 1) * log_lambda < log_dom;
    case LambdaMode::Bounded: return log_lambda < 0.0;
    default: return true;
  }
}

double lambda_slack(double log_lambda, double log_dom, LambdaMode mode, int dtilde) {
  switch (mode) {
    case LambdaMode::Coupled: return log_dom - (dtilde + 1) * log_lambda;
    case LambdaMode::Bounded: return -log_lambda;
    default: return kInf;
  }
}

template <class Apply>
InvarianceReport run_invariance(std::size_t samples, int threads, const std::function<ComplexVector(std::size_t)>& draw,
                                Apply&& image_slack) {
  InvarianceReport rep;
  rep.samples = samples;
  rep.min_slack = kInf;
  if (samples == 0) return rep;
  std::vector<ComplexVector> pts(samples);
  std::vector<double> slack(samples);
  parallel_for(samples, threads, [&](std::size_t s) {
    pts[s] = draw(s);
    slack[s] = image_slack(pts[s]);
  });
  for (std::size_t s = 0; s < samples; ++s) {
    rep.min_slack = std::min(rep.min_slack, slack[s]);
    if (!(slack[s] > 0.0)) {
      ++rep.violations;
      if (rep.witnesses.size() < 10) rep.witnesses.push_back(pts[s]);
    }
  }
  return rep;
}

}  // namespace

const char* to_string(RegionTag t) {
  switch (t) {
    case RegionTag::VR: return "VR";
    case RegionTag::VRi: return "VRi";
    case RegionTag::VRplus: return "VRplus";
    case RegionTag::VRminus: return "VRminus";
    case RegionTag::Sector: return "Sector";
    default: return "Unclassified";
  }
}

const char* to_string(LambdaMode m) {
  switch (m) {
    case LambdaMode::Coupled: return "coupled";
    case LambdaMode::Bounded: return "bounded";
    default: return "free";
  }
}

Region classify_shift(const ComplexVector& z, double R) {
  Region r;
  r.R = R;
  int best = 0;
  for (size_t i = 0; i < z.size(); ++i)
    if (std::abs(z[i]) > std::abs(z[best])) best = static_cast<int>(i);
  const double top = std::abs(z[best]);
  if (top <= R) {
    r.tag = RegionTag::VR;
    return r;
  }
  for (size_t i = 0; i < z.size(); ++i)
    if (static_cast<int>(i) != best && std::abs(z[i]) == top) return r;
  r.tag = RegionTag::VRi;
  r.index = best;
  return r;
}

bool in_sector(const ComplexVector& z, int i, double R, double eps) {
  const double zi = std::abs(z.at(i));
  if (!(zi > R)) return false;
  for (size_t j = 0; j < z.size(); ++j)
    if (static_cast<int>(j) != i && !(zi > std::abs(z[j]) + eps)) return false;
  return true;
}

bool in_sector_log(const std::vector<double>& logs, int i, double logR, double eps) {
  const double li = logs.at(i);
  if (!(li > logR)) return false;
  const double le = std::log(eps);
  for (size_t j = 0; j < logs.size(); ++j)
    if (static_cast<int>(j) != i && !(li > log_sum_exp2(logs[j], le))) return false;
  return true;
}

SkewFiltration skew_filtration(const SkewHenonMap& H, double R) {
  return {R, H.dtilde(), plus_mode(H.c_case()), minus_mode(H.c_case())};
}

SkewFiltration fibered_filtration(double R) { return {R, 0, LambdaMode::Free, LambdaMode::Free}; }

bool in_skew_region_log(double log_lambda, double log_x, double log_y, const SkewFiltration& f, Direction dir) {
  const double lR = std::log(f.R);
  const double dom = dir == Direction::Forward ? log_y : log_x;
  const double other = dir == Direction::Forward ? log_x : log_y;
  const LambdaMode mode = dir == Direction::Forward ? f.plus : f.minus;
  return dom > lR && dom > other && lambda_ok(log_lambda, dom, mode, f.dtilde);
}

bool in_skew_region(const ComplexVector& P, const SkewFiltration& f, Direction dir) {
  return in_skew_region_log(log_abs(P.at(0)), log_abs(P.at(1)), log_abs(P.at(2)), f, dir);
}

Region classify_skew(const ComplexVector& P, double R, const SkewHenonMap& H) {
  const SkewFiltration f = skew_filtration(H, R);
  Region r;
  r.R = R;
  r.c_case = H.c_case();
  if (in_skew_region(P, f, Direction::Forward)) r.tag = RegionTag::VRplus;
  else if (in_skew_region(P, f, Direction::Inverse)) r.tag = RegionTag::VRminus;
  else if (std::abs(P.at(1)) <= R && std::abs(P.at(2)) <= R) r.tag = RegionTag::VR;
  return r;
}

ShiftThresholds estimate_thresholds(const ShiftLikeMap& S, const ShiftLikeMap& T) {
  if (S.k() != T.k() || S.nu() != T.nu()) throw InputError("threshold estimation needs maps of the same k and nu");
  const std::vector<ShiftCoeffs> cs = {shift_coeffs(S), shift_coeffs(T)};
  const double M = std::max({std::abs(S.a()), std::abs(T.a()), 1.0});
  ShiftThresholds th;
  th.eps = 0.5 * std::min(cs[0].c, cs[1].c);
  th.R_eps = std::max(bracket_radius(cs[0], th.eps), bracket_radius(cs[1], th.eps));
  for (const auto& c : cs) th.eps0 = std::max(th.eps0, (2.0 * c.S + 2.0 * M) / c.c + 1.0);
  const int dmin = std::min(cs[0].d, cs[1].d);
  double B = 0.0;
  for (const auto& c : cs) B = std::max(B, 1.0 / (c.c - th.eps));
  const double eps = th.eps;
  const double eps0 = th.eps0;
  auto ok = [&](double R) {
    if (!(R > 1.0) || R < 2.0 * eps0 || R < th.R_eps) return false;
    if (!(std::pow(R + eps0, dmin) - std::pow(R, dmin) > 2.0 * R * M * B)) return false;
    for (const auto& c : cs) {
      const double Rd1 = std::pow(R, c.d - 1);
      if (!(2.0 * eps * Rd1 * R > M * eps0)) return false;
      if (!(Rd1 * (c.c * eps0 - 2.0 * c.S - 2.0 * M) > M * eps0)) return false;
      if (!(Rd1 * (c.c * R - c.S - 2.0 * M) > M * eps0)) return false;
      if (!((M + c.S) / (c.c * Rd1) <= 0.5)) return false;
    }
    return true;
  };
  th.R0 = monotone_search(ok, 1.0) * kSafety;
  return th;
}

double skew_threshold(const PolyMap& symbolic, Direction dir, LambdaMode mode, int dtilde, double lead, double delta,
                      double lambda_factor) {
  const int dom = dir == Direction::Forward ? 2 : 1;
  const int oth = dir == Direction::Forward ? 1 : 2;
  const MultiPoly& P = symbolic.at(dom);
  const MultiPoly& X = symbolic.at(oth);
  const int d = P.degree_in(dom);
  const double theta = mode == LambdaMode::Coupled ? 1.0 / (dtilde + 1) : 0.0;
  struct Term {
    double a;
    double e;
  };
  auto collect = [&](const MultiPoly& poly, bool skip_leading) {
    std::vector<Term> out;
    for (const auto& [ex, c] : poly.terms()) {
      if (skip_leading && ex[dom] == d && ex[oth] == 0 && ex[0] == 0) continue;
      const double e = ex[1] + ex[2] + ex[0] * theta;
      if (!(e < d)) throw DominanceNotReached("a lower-order term is not dominated by the leading power");
      out.push_back({std::abs(c.to_complex()) * kSafety, e});
    }
    return out;
  };
  const auto q = collect(P, true);
  const auto x = collect(X, false);
  if (!(delta > 0.0 && delta < lead)) throw InputError("delta must lie in (0, |leading coefficient|)");
  auto mass = [&](const std::vector<Term>& ts, double R) {
    double s = 0.0;
    for (const auto& t : ts) s += t.a * std::pow(R, t.e - d);
    return s;
  };
  auto ok = [&](double R) {
    if (R < 2.0) return false;
    if (!(mass(q, R) <= 0.5 * delta)) return false;
    if (!(mass(x, R) <= 0.5 * (lead - delta))) return false;
    return (lead - delta) * std::pow(R, d - 1) >= 2.0 * lambda_factor;
  };
  return monotone_search(ok, 2.0) * kSafety;
}

SkewThresholds estimate_skew_thresholds(const SkewHenonMap& H, double delta) {
  SkewThresholds th;
  const double lp = std::abs(H.c_H());
  const double lm = std::abs(H.c_H_prime());
  th.delta_plus = delta > 0.0 ? delta : 0.5 * std::min(lp, 1.0);
  th.delta_minus = delta > 0.0 ? delta : 0.5 * std::min(lm, 1.0);
  SkewFiltration f = skew_filtration(H, 0.0);
  const double cpow = std::pow(std::abs(H.c()), H.dtilde() + 1);
  const double fp = f.plus == LambdaMode::Coupled ? std::max(1.0, cpow) : 1.0;
  const double fm = f.minus == LambdaMode::Coupled ? std::max(1.0, 1.0 / cpow) : 1.0;
  th.R0_plus = skew_threshold(H.symbolic(Direction::Forward), Direction::Forward, f.plus, H.dtilde(), lp,
                              th.delta_plus, fp);
  th.R0_minus = skew_threshold(H.symbolic(Direction::Inverse), Direction::Inverse, f.minus, H.dtilde(), lm,
                               th.delta_minus, fm);
  th.R = std::max(th.R0_plus, th.R0_minus);
  f.R = th.R;
  th.filtration = f;
  return th;
}

SkewThresholds estimate_fibered_thresholds(const FiberedSkewHenon& F, double delta) {
  SkewThresholds th;
  const double lp = std::abs(F.c_H());
  const double lm = std::abs(F.c_H_prime());
  th.delta_plus = delta > 0.0 ? delta : 0.5 * std::min(lp, 1.0);
  th.delta_minus = delta > 0.0 ? delta : 0.5 * std::min(lm, 1.0);
  th.R0_plus = skew_threshold(F.symbolic(Direction::Forward), Direction::Forward, LambdaMode::Free, 0, lp,
                              th.delta_plus, 1.0);
  th.R0_minus = skew_threshold(F.symbolic(Direction::Inverse), Direction::Inverse, LambdaMode::Free, 0, lm,
                               th.delta_minus, 1.0);
  th.R = std::max(th.R0_plus, th.R0_minus);
  th.filtration = fibered_filtration(th.R);
  return th;
}

ComplexVector sample_sector(int k, int i, double R, double eps, std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  ComplexVector z(k);
  const double top = rng.log_uniform(R, 1e6 * R) * kSafety;
  z[i] = rng.polar(top);
  for (int j = 0; j < k; ++j)
    if (j != i) z[j] = rng.polar(rng.inner_radius(top - eps));
  return z;
}

ComplexVector sample_skew_region(const SkewFiltration& f, Direction dir, std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  const double top = rng.log_uniform(f.R, 1e6 * f.R) * kSafety;
  const Complex dom = rng.polar(top);
  const Complex oth = rng.polar(rng.inner_radius(top));
  const LambdaMode mode = dir == Direction::Forward ? f.plus : f.minus;
  Complex lam;
  switch (mode) {
    case LambdaMode::Coupled: lam = rng.polar(rng.inner_radius(std::pow(top, 1.0 / (f.dtilde + 1)))); break;
    case LambdaMode::Bounded: lam = rng.polar(rng.inner_radius(1.0)); break;
    default: lam = FiberedSkewHenon::lambda_of(rng.uniform()); break;
  }
  return dir == Direction::Forward ? ComplexVector{lam, oth, dom} : ComplexVector{lam, dom, oth};
}

InvarianceReport check_invariance_shift(const ShiftLikeMap& S, Direction dir, int i, double R, double eps0,
                                        std::size_t samples, std::uint64_t seed, int threads) {
  if (!S.is_sector(i, dir)) throw InputError("sector index does not belong to the requested direction");
  auto draw = [&](std::size_t s) { return sample_sector(S.k(), i, R, eps0, seed, s); };
  auto slack = [&](const ComplexVector& z) {
    std::vector<LogComplex> w;
    for (const auto& c : z) w.push_back(LogComplex::from(c));
    S.block_step(w, dir, -1, nullptr);
    const double li = w[i].logmod();
    double worst = li - std::log(R);
    for (int j = 0; j < S.k(); ++j)
      if (j != i) worst = std::min(worst, li - log_sum_exp2(w[j].logmod(), std::log(eps0)));
    return worst;
  };
  return run_invariance(samples, threads, draw, slack);
}

namespace {

double skew_image_slack(const ComplexVector& img, const SkewFiltration& f, Direction dir) {
  const double ll = log_abs(img[0]);
  const double lx = log_abs(img[1]);
  const double ly = log_abs(img[2]);
  const double dom = dir == Direction::Forward ? ly : lx;
  const double oth = dir == Direction::Forward ? lx : ly;
  const LambdaMode mode = dir == Direction::Forward ? f.plus : f.minus;
  double s = std::min(dom - std::log(f.R), dom - oth);
  return std::min(s, lambda_slack(ll, dom, mode, f.dtilde));
}

}  // namespace

InvarianceReport check_invariance_skew(const SkewHenonMap& H, Direction dir, const SkewFiltration& f,
                                       std::size_t samples, std::uint64_t seed, int threads) {
  auto draw = [&](std::size_t s) { return sample_skew_region(f, dir, seed, s); };
  auto slack = [&](const ComplexVector& P) { return skew_image_slack(H.apply(P, dir), f, dir); };
  return run_invariance(samples, threads, draw, slack);
}

InvarianceReport check_invariance_fibered(const FiberedSkewHenon& F, Direction dir, const SkewFiltration& f,
                                          std::size_t samples, std::uint64_t seed, int threads) {
  auto draw = [&](std::size_t s) { return sample_skew_region(f, dir, seed, s); };
  auto slack = [&](const ComplexVector& P) { return skew_image_slack(F.apply(P, dir), f, dir); };
  return run_invariance(samples, threads, draw, slack);
}

}  // namespace polyauto

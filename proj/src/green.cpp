#include "polyauto/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyauto/errors.hpp"

namespace polyauto {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOverflowSwitch = 1e100;

template <class T>
void step(const AnyMap& map, Direction dir, std::vector<T>& z, double& t, int target, Complex* corr,
          double* rho = nullptr) {
  if (const auto* S = std::get_if<ShiftLikeMap>(&map)) {
    S->block_step(z, dir, target, target >= 0 ? corr : nullptr, rho);
    return;
  }
  Complex* c = target >= 0 ? corr : nullptr;
  if (const auto* H = std::get_if<SkewHenonMap>(&map)) {
    if (dir == Direction::Forward) {
      fiber_forward(H->factors(), z[0], z[1], z[2], c, rho);
      z[0] = lift<T>(H->c()) * z[0];
    } else {
      z[0] = z[0] / lift<T>(H->c());
      fiber_inverse(H->factors(), z[0], z[1], z[2], c, rho);
    }
    return;
  }
  const auto& F = std::get<FiberedSkewHenon>(map);
  if (dir == Direction::Forward) {
    fiber_forward(F.factors(), z[0], z[1], z[2], c, rho);
    t = F.rotate(t, dir);
    z[0] = lift<T>(FiberedSkewHenon::lambda_of(t));
  } else {
    t = F.rotate(t, dir);
    z[0] = lift<T>(FiberedSkewHenon::lambda_of(t));
    fiber_inverse(F.factors(), z[0], z[1], z[2], c, rho);
  }
}

template <class V>
std::vector<double> logs_of(const V& z) {
  std::vector<double> l;
  l.reserve(z.size());
  for (const auto& c : z) l.push_back(log_abs(c));
  return l;
}

bool all_finite(const std::vector<double>& logs) {
  for (double l : logs)
    if (std::isnan(l) || l == kInf) return false;
  return true;
}

}  // namespace

const char* to_string(OrbitClass::Tag t) {
  switch (t) {
    case OrbitClass::Tag::Escaping: return "Escaping";
    case OrbitClass::Tag::Bounded: return "Bounded";
    default: return "Undetermined";
  }
}

OrbitEngine::OrbitEngine(AnyMap map, Direction dir, OrbitOptions opt) : map_(std::move(map)), dir_(dir), opt_(opt) {
  degree_ = green_degree(map_);
  if (const auto* S = std::get_if<ShiftLikeMap>(&map_)) {
    if (opt_.R <= 0.0 || opt_.eps0 <= 0.0) {
      const ShiftThresholds th = estimate_thresholds(*S);
      if (opt_.R <= 0.0) opt_.R = th.R0;
      if (opt_.eps0 <= 0.0) opt_.eps0 = th.eps0;
    }
    lead_ = S->block_multiplier(dir_);
  } else if (const auto* H = std::get_if<SkewHenonMap>(&map_)) {
    if (opt_.R <= 0.0) opt_.R = estimate_skew_thresholds(*H).R;
    filt_ = skew_filtration(*H, opt_.R);
    lead_ = dir_ == Direction::Forward ? H->c_H() : H->c_H_prime();
    log_dtilde_ratio_ = std::log(static_cast<double>(H->dtilde()) / H->d());
  } else {
    const auto& F = std::get<FiberedSkewHenon>(map_);
    if (opt_.R <= 0.0) opt_.R = estimate_fibered_thresholds(F).R;
    filt_ = fibered_filtration(opt_.R);
    lead_ = dir_ == Direction::Forward ? F.c_H() : F.c_H_prime();
  }
  if (!(opt_.R > 1.0)) throw InputError("escape radius must exceed 1");
}

double OrbitEngine::log_normalization(int n) const { return n * std::log(static_cast<double>(degree_)) + log_dtilde_ratio_; }

ComplexVector OrbitEngine::apply_block(const ComplexVector& P) const {
  if (const auto* S = std::get_if<ShiftLikeMap>(&map_)) {
    ComplexVector z = P;
    for (int s = 0; s < S->block(dir_); ++s) S->single_step(z, dir_);
    return z;
  }
  return apply(map_, P, dir_);
}

RegionTag OrbitEngine::region_tag(const std::vector<double>& logs, int* index) const {
  const double lR = std::log(opt_.R);
  if (const auto* S = std::get_if<ShiftLikeMap>(&map_)) {
    for (int i = S->first_sector(dir_); i <= S->last_sector(dir_); ++i) {
      if (in_sector_log(logs, i, lR, opt_.eps0)) {
        if (index) *index = i;
        return RegionTag::Sector;
      }
    }
    const double top = *std::max_element(logs.begin(), logs.end());
    return top <= lR ? RegionTag::VR : RegionTag::Unclassified;
  }
  if (in_skew_region_log(logs[0], logs[1], logs[2], filt_, dir_)) {
    if (index) *index = dir_ == Direction::Forward ? 2 : 1;
    return dir_ == Direction::Forward ? RegionTag::VRplus : RegionTag::VRminus;
  }
  return logs[1] <= lR && logs[2] <= lR ? RegionTag::VR : RegionTag::Unclassified;
}

OrbitRecord OrbitEngine::trace(const ComplexVector& P) const { return trace(P, opt_.depth); }

OrbitRecord OrbitEngine::trace(const ComplexVector& P, int depth) const {
  if (static_cast<int>(P.size()) != dimension(map_)) throw ArityMismatch("point dimension does not match the map");
  OrbitRecord rec;
  rec.direction = dir_;
  const bool shift = std::holds_alternative<ShiftLikeMap>(map_);
  const bool fibered = std::holds_alternative<FiberedSkewHenon>(map_);
  double t = fibered ? FiberedSkewHenon::base_of(P[0]) : 0.0;
  ComplexVector zc = P;
  if (fibered) zc[0] = FiberedSkewHenon::lambda_of(t);
  std::vector<LogComplex> zl;
  const double bound_log = std::log(opt_.R * (1.0 + opt_.bounded_tol));
  bool stayed_bounded = true;

  for (int n = 0;; ++n) {
    std::vector<double> logs = rec.log_space ? logs_of(zl) : logs_of(zc);
    const double norm = fibered ? std::max(logs[1], logs[2]) : *std::max_element(logs.begin(), logs.end());
    int idx = -1;
    const RegionTag tag = region_tag(logs, &idx);
    rec.log_norms.push_back(norm);
    rec.tags.push_back(tag);
    if (norm > bound_log) stayed_bounded = false;
    if (!rec.escape_index && (tag == RegionTag::Sector || tag == RegionTag::VRplus || tag == RegionTag::VRminus)) {
      rec.escape_index = n;
      rec.target = idx;
    }
    if (rec.escape_index) {
      if (idx != rec.target) ++rec.region_violations;
      rec.targets.push_back(rec.log_space ? zl[rec.target] : LogComplex::from(zc[rec.target]));
    }
    rec.coord_logs.push_back(std::move(logs));
    if (rec.escape_index ? n >= std::max(depth, *rec.escape_index) : n >= opt_.horizon) break;

    const int target = rec.escape_index ? rec.target : -1;
    Complex corr = 0.0;
    double rho = 0.0;
    if (!rec.log_space) {
      ComplexVector next = zc;
      double tn = t;
      step(map_, dir_, next, tn, target, &corr, &rho);
      bool overflow = false;
      for (const auto& c : next)
        if (!(std::abs(c) <= kOverflowSwitch)) overflow = true;
      if (!overflow) {
        zc = std::move(next);
        t = tn;
      } else {
        rec.log_space = true;
        for (const auto& c : zc) zl.push_back(LogComplex::from(c));
      }
    }
    if (rec.log_space) {
      step(map_, dir_, zl, t, target, &corr, &rho);
      if (!all_finite(logs_of(zl))) {
        rec.nonfinite = true;
        break;
      }
    }
    if (rec.escape_index) {
      rec.corrections.push_back(corr);
      rec.rho.push_back(rho);
    }
  }

  const int last = rec.length() - 1;
  if (rec.escape_index) rec.cls = {OrbitClass::Tag::Escaping, *rec.escape_index};
  else if (rec.nonfinite) rec.cls = {OrbitClass::Tag::Undetermined, last};
  else if (shift && !stayed_bounded) rec.cls = {OrbitClass::Tag::Undetermined, last};
  else rec.cls = {OrbitClass::Tag::Bounded, last};
  return rec;
}

OrbitClass classify_orbit(const AnyMap& map, const ComplexVector& P, Direction dir, double R, int N) {
  OrbitOptions opt;
  opt.R = R;
  opt.horizon = N;
  return OrbitEngine(map, dir, opt).trace(P).cls;
}

double green_at(const OrbitEngine& engine, const OrbitRecord& rec, int n) {
  const double ln = rec.log_norms.at(n);
  if (!(ln > 0.0)) return 0.0;
  return std::exp(std::log(ln) - engine.log_normalization(n));
}

GreenEstimate green_from_record(const OrbitEngine& engine, const OrbitRecord& rec, int n_max, double tol) {
  GreenEstimate g;
  g.cls = rec.cls;
  const int len = rec.length();
  const double log_lead = std::log(std::abs(engine.lead()));
  for (int n = 0; n < len; ++n) g.values.push_back(green_at(engine, rec, n));
  for (int n = 0; n + 1 < len; ++n) {
    if (rec.escape_index && n >= *rec.escape_index) {
      const double num = log_lead + rec.correction(n).real();
      g.increments.push_back(std::abs(num) * std::exp(-engine.log_normalization(n + 1)));
    } else {
      g.increments.push_back(std::abs(g.values[n + 1] - g.values[n]));
    }
  }
  if (rec.cls.tag == OrbitClass::Tag::Bounded) {
    g.resolved = true;
    g.depth = std::min(n_max, len - 1);
    g.value = 0.0;
    g.extrapolated = 0.0;
    return g;
  }
  int m = std::min(len - 1, std::max(n_max, rec.escape_index.value_or(0)));
  if (rec.escape_index && tol > 0.0) {
    for (int n = *rec.escape_index; n + 1 < m; ++n) {
      if (g.increments[n] < tol && g.increments[n + 1] < tol) {
        m = n + 2;
        break;
      }
    }
  }
  g.depth = m;
  g.value = g.values[m];
  g.extrapolated = g.value;
  g.resolved = rec.cls.tag == OrbitClass::Tag::Escaping;
  if (rec.escape_index && m >= *rec.escape_index) {
    const double D = engine.degree();
    g.extrapolated = g.value + log_lead * std::exp(-engine.log_normalization(m)) / (D - 1.0);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int n = *rec.escape_index; n < m; ++n) {
      const double inc = g.increments[n];
      if (!(inc > 0.0)) continue;
      const double y = std::log(inc);
      sx += n;
      sy += y;
      sxx += double(n) * n;
      sxy += n * y;
      ++cnt;
      g.fitted_C = std::max(g.fitted_C, inc * std::exp(engine.log_normalization(n + 1)));
    }
    if (cnt >= 2) {
      const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
      g.fitted_ratio = std::exp(slope);
    }
  }
  return g;
}

GreenEstimate green_value(const OrbitEngine& engine, const ComplexVector& P, int n_max, double tol) {
  return green_from_record(engine, engine.trace(P, n_max), n_max, tol);
}

GreenEstimate green_value(const AnyMap& map, const ComplexVector& P, Direction dir, int n_max, double tol,
                          OrbitOptions opt) {
  return green_value(OrbitEngine(map, dir, opt), P, n_max, tol);
}

IdentityResidual functional_identity_residual(const OrbitEngine& engine, const ComplexVector& P, int n) {
  const OrbitRecord a = engine.trace(engine.apply_block(P), n);
  const OrbitRecord b = engine.trace(P, n + 1);
  if (a.length() <= n || b.length() <= n + 1)
    throw DominanceNotReached("orbit not representable to the requested depth");
  const double left = green_at(engine, a, n);
  const double right = engine.degree() * green_at(engine, b, n + 1);
  return {std::abs(left - right), std::max(1.0, std::max(left, right))};
}

IdentityResidual functional_identity_residual(const AnyMap& map, const ComplexVector& P, Direction dir, int n,
                                              OrbitOptions opt) {
  opt.horizon = std::max(opt.horizon, n + 1);
  return functional_identity_residual(OrbitEngine(map, dir, opt), P, n);
}

EstimateCheck verify_est(const AnyMap& map, const ComplexVector& P, Direction dir, double delta, int n, double R) {
  EstimateCheck out;
  if (std::holds_alternative<ShiftLikeMap>(map)) throw InputError("growth bracket applies to the Henon families");
  const bool fibered = std::holds_alternative<FiberedSkewHenon>(map);
  Complex lead;
  const PolyMap* sym;
  SkewFiltration filt;
  double lambda_factor = 1.0;
  LambdaMode mode;
  if (fibered) {
    const auto& F = std::get<FiberedSkewHenon>(map);
    lead = dir == Direction::Forward ? F.c_H() : F.c_H_prime();
    sym = &F.symbolic(dir);
    filt = fibered_filtration(R);
    mode = LambdaMode::Free;
  } else {
    const auto& H = std::get<SkewHenonMap>(map);
    lead = dir == Direction::Forward ? H.c_H() : H.c_H_prime();
    sym = &H.symbolic(dir);
    filt = skew_filtration(H, R);
    mode = dir == Direction::Forward ? filt.plus : filt.minus;
    const double cpow = std::pow(std::abs(H.c()), H.dtilde() + 1);
    if (mode == LambdaMode::Coupled) lambda_factor = dir == Direction::Forward ? std::max(1.0, cpow) : std::max(1.0, 1.0 / cpow);
  }
  const double h = std::min(std::abs(lead), 1.0);
  if (!(delta > 0.0 && delta < h)) {
    out.precondition_ok = false;
    out.precondition_error = "delta must lie in (0, min(|lead|, 1))";
    return out;
  }
  bool sees_lambda = false;
  for (int i : {1, 2})
    for (const auto& term : sym->at(i).terms()) sees_lambda = sees_lambda || term.first[0] > 0;
  if (!sees_lambda) lambda_factor = 1.0;
  out.R0 = skew_threshold(*sym, dir, mode, filt.dtilde, std::abs(lead), delta, lambda_factor);
  if (R < out.R0) {
    out.precondition_ok = false;
    out.precondition_error = "R is below the threshold R0(delta)";
    return out;
  }
  if (!in_skew_region(P, filt, dir)) {
    out.precondition_ok = false;
    out.precondition_error = "point is not in the escaping region";
    return out;
  }
  const int tgt = dir == Direction::Forward ? 2 : 1;
  const double d = green_degree(map);
  const double l0 = log_abs(P[tgt]);
  const double lo = std::log(std::abs(lead) - delta);
  const double hi = std::log(std::abs(lead) + delta);
  std::vector<LogComplex> z;
  for (const auto& c : P) z.push_back(LogComplex::from(c));
  double t = fibered ? FiberedSkewHenon::base_of(P[0]) : 0.0;
  const int limit = n < 0 ? 4000 : n;
  double dk = 1.0;
  for (int k = 1; k <= limit; ++k) {
    step(map, dir, z, t, -1, nullptr);
    dk *= d;
    const double lk = z[tgt].logmod();
    const double geo = (dk - 1.0) / (d - 1.0);
    const double lower = geo * lo + dk * l0;
    const double upper = geo * hi + dk * l0;
    if (!std::isfinite(lk) || !std::isfinite(lower) || !std::isfinite(upper)) break;
    out.checked = k;
    if (!(lower < lk && lk < upper)) {
      out.holds = false;
      if (out.first_failure < 0) out.first_failure = k;
    }
  }
  return out;
}

GrowthReport verify_growth_bounds(const SkewHenonMap& H, const ComplexVector& P, int n, double R) {
  GrowthReport rep;
  const PolyMap& sym = H.symbolic(Direction::Forward);
  double sx = 0.0, sy = 0.0;
  for (const auto& [e, c] : sym[1].terms()) sx += std::abs(c.to_complex());
  for (const auto& [e, c] : sym[2].terms()) sy += std::abs(c.to_complex());
  rep.K = std::max({sx, sy, 1.0}) * (1.0 + 1e-12);
  const int dt = std::max(H.dtilde(), sym[1].degree_in(0));
  const double d = H.d();
  const double dm = H.last_degree();
  rep.exponent = 1.0 + d / dm;
  const double cabs = std::abs(H.c());
  rep.L = std::max({std::max(sx, 1.0) * (1.0 + 1e-12), std::pow(cabs, H.dtilde() + 1), 1.0});
  const SkewFiltration filt = skew_filtration(H, R);
  rep.bounded_applicable = cabs >= 1.0;

  const double lam_plus = std::max(0.0, log_abs(P[0]));
  const double c_plus = std::max(0.0, std::log(cabs));
  const double xy_plus = std::max({0.0, log_abs(P[1]), log_abs(P[2])});
  const double base_global = std::log(rep.K) + dt * lam_plus + dt * c_plus + xy_plus;
  const double M0 = std::max({std::log(R), log_abs(P[1]), (H.dtilde() + 1) * log_abs(P[0])});

  std::vector<LogComplex> z;
  for (const auto& c : P) z.push_back(LogComplex::from(c));
  double t = 0.0;
  double dn = 1.0, en = 1.0;
  bool in_k_plus = rep.bounded_applicable;
  double prev_norm = std::max({z[0].logmod(), z[1].logmod(), z[2].logmod()});
  for (int k = 1; k <= n; ++k) {
    if (in_k_plus && in_skew_region_log(z[0].logmod(), z[1].logmod(), z[2].logmod(), filt, Direction::Forward))
      in_k_plus = false;
    step(AnyMap(H), Direction::Forward, z, t, -1, nullptr);
    dn *= d;
    en *= rep.exponent;
    const double lxy = std::max(z[1].logmod(), z[2].logmod());
    if (!std::isfinite(lxy) && lxy > 0) break;
    rep.checked = k;
    if (!(lxy <= dn * base_global)) rep.global_holds = false;
    const double norm = std::max({z[0].logmod(), lxy});
    if (prev_norm > 0.0 && std::isfinite(norm)) rep.log_growth_ratio.push_back(norm / prev_norm);
    prev_norm = norm;
    if (in_k_plus && !in_skew_region_log(z[0].logmod(), z[1].logmod(), z[2].logmod(), filt, Direction::Forward)) {
      const double bound = (en - 1.0) / (rep.exponent - 1.0) * std::log(rep.L) + en * M0;
      if (!(lxy <= bound)) rep.bounded_holds = false;
    } else {
      in_k_plus = false;
    }
  }
  if (!rep.bounded_applicable) rep.bounded_holds = true;
  return rep;
}

bool ProjectiveRatios::strictly_decreasing(double floor_log) const {
  auto dec = [&](const std::vector<double>& v) {
    for (size_t i = 1; i < v.size(); ++i) {
      if (v[i] == -kInf && v[i - 1] == -kInf) continue;
      if (v[i - 1] <= floor_log && v[i] <= floor_log) continue;
      if (!(v[i] < v[i - 1])) return false;
    }
    return true;
  };
  return dec(log_ratio) && dec(log_lambda_ratio);
}

ProjectiveRatios projective_ratio(const AnyMap& map, const ComplexVector& P, Direction dir, int n) {
  if (std::holds_alternative<ShiftLikeMap>(map)) throw InputError("projective ratios apply to the Henon families");
  int dtilde = 0;
  if (const auto* H = std::get_if<SkewHenonMap>(&map)) dtilde = H->dtilde();
  ProjectiveRatios out;
  std::vector<LogComplex> z;
  for (const auto& c : P) z.push_back(LogComplex::from(c));
  double t = std::holds_alternative<FiberedSkewHenon>(map) ? FiberedSkewHenon::base_of(P[0]) : 0.0;
  const int tgt = dir == Direction::Forward ? 2 : 1;
  const int oth = dir == Direction::Forward ? 1 : 2;
  for (int k = 1; k <= n; ++k) {
    step(map, dir, z, t, -1, nullptr);
    const double lt = z[tgt].logmod();
    if (!std::isfinite(lt)) break;
    out.log_ratio.push_back(z[oth].logmod() - lt);
    out.log_lambda_ratio.push_back(z[0].is_zero() ? -kInf : (dtilde + 1) * z[0].logmod() - lt);
  }
  return out;
}

}  // namespace polyauto

#include "polyauto/verify.hpp"

#include <cmath>
#include <limits>

#include "polyauto/boettcher.hpp"
#include "polyauto/errors.hpp"
#include "polyauto/filtration.hpp"
#include "polyauto/parallel.hpp"
#include "polyauto/random.hpp"
#include "polyauto/rigidity.hpp"

namespace polyauto {

using nlohmann::json;

namespace {

constexpr Direction kDirections[] = {Direction::Forward, Direction::Inverse};

// Per-sample outcome; `error` carries exceptions raised inside a worker.
struct Sample {
  bool ok = true;
  double value = 0.0;
  double value2 = 0.0;
  std::string error;
};

template <class Fn>
std::vector<Sample> run_samples(std::size_t n, int threads, Fn fn) {
  std::vector<Sample> out(n);
  parallel_for(n, resolve_threads(threads), [&](std::size_t i) {
    try {
      out[i] = fn(i);
    } catch (const std::exception& e) {
      out[i].ok = false;
      out[i].error = e.what();
    }
  });
  return out;
}

// Shared reduction: failure count, worst value, first failing sample.
json summarize(const std::vector<Sample>& s, bool& pass) {
  std::size_t failures = 0;
  double worst = 0.0, worst2 = 0.0;
  json first;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::isfinite(s[i].value)) worst = std::max(worst, s[i].value);
    if (std::isfinite(s[i].value2)) worst2 = std::max(worst2, s[i].value2);
    if (!s[i].ok) {
      ++failures;
      if (first.is_null()) first = {{"sample", i}, {"value", s[i].value}, {"error", s[i].error}};
    }
  }
  if (failures) pass = false;
  json j = {{"samples", s.size()}, {"failures", failures}, {"worst", worst}};
  if (worst2 > 0.0) j["worst_secondary"] = worst2;
  if (!first.is_null()) j["first_failure"] = first;
  return j;
}

OrbitOptions options_for(const RunConfig& cfg) {
  OrbitOptions o = cfg.orbit_options();
  return o;
}

std::uint64_t stream_id(int check, int dir, std::size_t i) {
  return (static_cast<std::uint64_t>(check) << 40) ^ (static_cast<std::uint64_t>(dir) << 32) ^ i;
}

double sup_abs(const ComplexVector& z) {
  double m = 0.0;
  for (const auto& c : z) m = std::max(m, std::abs(c));
  return m;
}

bool is_shift(const AnyMap& m) { return std::holds_alternative<ShiftLikeMap>(m); }

CheckResult make(const char* name, const LoadedMap& m) {
  CheckResult r;
  r.check = name;
  r.map = m.name;
  return r;
}

StructureConstants constants_of(const AnyMap& map) {
  if (const auto* H = std::get_if<SkewHenonMap>(&map)) return structure_constants(*H);
  const auto& F = std::get<FiberedSkewHenon>(map);
  return {F.d(), F.d(), F.c_H(), F.c_H_prime()};
}

}  // namespace

json relation_json(const CoefficientRelationReport& r) {
  json rel = json::array();
  for (const auto& x : r.relations) rel.push_back({{"relation", x.name}, {"left", x.left}, {"right", x.right}, {"pass", x.pass}});
  json del = json::array();
  for (size_t i = 0; i < r.deltas.size(); ++i)
    del.push_back({{"name", r.delta_names[i]},
                   {"modulus", r.delta_moduli[i]},
                   {"unimodular", static_cast<bool>(r.delta_unimodular[i])}});
  return {{"relations", rel}, {"deltas", del}, {"pass", r.pass()}};
}

ComplexVector sample_region(const OrbitEngine& engine, std::uint64_t seed, std::uint64_t stream) {
  if (const auto* S = std::get_if<ShiftLikeMap>(&engine.map())) {
    const Direction dir = engine.direction();
    const int count = S->last_sector(dir) - S->first_sector(dir) + 1;
    const int i = S->first_sector(dir) + static_cast<int>(stream % count);
    return sample_sector(S->k(), i, engine.R(), engine.eps0(), seed, stream);
  }
  return sample_skew_region(engine.filtration(), engine.direction(), seed, stream);
}

CheckResult check_round_trip(const LoadedMap& m, const RunConfig& cfg) {
  CheckResult r = make("round_trip", m);
  const bool fibered = std::holds_alternative<FiberedSkewHenon>(m.map);
  const int dim = dimension(m.map);
  auto samples = run_samples(cfg.samples, cfg.threads, [&](std::size_t i) {
    Rng rng(cfg.seed, stream_id(1, 0, i));
    ComplexVector P(dim);
    for (auto& c : P) c = rng.polar(2.0 * std::sqrt(rng.uniform()));
    if (fibered) P[0] = FiberedSkewHenon::lambda_of(rng.uniform());
    Sample s;
    for (Direction d : kDirections) {
      const ComplexVector mid = apply(m.map, P, d);
      const ComplexVector back = apply(m.map, mid, opposite(d));
      double err = 0.0;
      for (int j = 0; j < dim; ++j) err = std::max(err, std::abs(back[j] - P[j]));
      const double rel = err / std::max({1.0, sup_abs(P), sup_abs(mid)});
      s.value = std::max(s.value, rel);
    }
    s.ok = s.value <= 1e-12;
    return s;
  });
  r.detail["numeric"] = summarize(samples, r.pass);
  r.detail["numeric"]["tolerance"] = 1e-12;
  json sym = json::array();
  for (int n = 1; n <= 2; ++n) {
    const PolyMap f = to_multipoly(m.map, n);
    const PolyMap g = to_multipoly(m.map, -n);
    const int cost = std::max(total_degree(f) * total_degree(g), total_degree(g) * total_degree(f));
    if (cost > kSymbolicDegreeBudget) {
      sym.push_back({{"n", n}, {"skipped", "composed degree " + std::to_string(cost) + " exceeds budget " +
                                               std::to_string(kSymbolicDegreeBudget)}});
      continue;
    }
    const bool ok = multipoly_compose(f, g) == identity_map(dim) && multipoly_compose(g, f) == identity_map(dim);
    if (!ok) r.pass = false;
    sym.push_back({{"n", n}, {"exact_identity", ok}});
  }
  r.detail["symbolic"] = sym;
  return r;
}

CheckResult check_invariance(const LoadedMap& m, const RunConfig& cfg, std::size_t samples) {
  CheckResult r = make("invariance", m);
  json regions = json::array();
  auto record = [&](const std::string& region, const InvarianceReport& rep) {
    if (!rep.invariant()) r.pass = false;
    json j = {{"region", region}, {"samples", rep.samples}, {"violations", rep.violations}, {"min_slack", rep.min_slack}};
    if (!rep.witnesses.empty()) {
      json w = json::array();
      for (const auto& c : rep.witnesses.front()) w.push_back(complex_json(c));
      j["witness"] = w;
    }
    regions.push_back(j);
  };
  if (const auto* S = std::get_if<ShiftLikeMap>(&m.map)) {
    const ShiftThresholds th = estimate_thresholds(*S);
    const double R = cfg.R > 0.0 ? std::max(cfg.R, th.R0) : th.R0;
    r.detail["R"] = R;
    r.detail["eps0"] = th.eps0;
    for (Direction d : kDirections)
      for (int i = S->first_sector(d); i <= S->last_sector(d); ++i)
        record(std::string(d == Direction::Forward ? "plus" : "minus") + " sector " + std::to_string(i),
               check_invariance_shift(*S, d, i, R, th.eps0, samples, cfg.seed, cfg.threads));
  } else if (const auto* H = std::get_if<SkewHenonMap>(&m.map)) {
    const SkewThresholds th = estimate_skew_thresholds(*H);
    const double R = std::max(cfg.R, th.R);
    const SkewFiltration f = skew_filtration(*H, R);
    r.detail["R"] = R;
    r.detail["c_case"] = H->c_case() == CCase::Expanding ? "|c|>1" : H->c_case() == CCase::Contracting ? "|c|<1" : "|c|=1";
    record("V_R^+", check_invariance_skew(*H, Direction::Forward, f, samples, cfg.seed, cfg.threads));
    record("V_R^-", check_invariance_skew(*H, Direction::Inverse, f, samples, cfg.seed, cfg.threads));
  } else {
    const auto& F = std::get<FiberedSkewHenon>(m.map);
    const SkewThresholds th = estimate_fibered_thresholds(F);
    const double R = std::max(cfg.R, th.R);
    const SkewFiltration f = fibered_filtration(R);
    r.detail["R"] = R;
    record("V_R^+", check_invariance_fibered(F, Direction::Forward, f, samples, cfg.seed, cfg.threads));
    record("V_R^-", check_invariance_fibered(F, Direction::Inverse, f, samples, cfg.seed, cfg.threads));
  }
  r.detail["regions"] = regions;
  return r;
}

CheckResult check_invariance_pair(const ShiftLikeMap& S, const ShiftLikeMap& T, const RunConfig& cfg,
                                  std::size_t samples) {
  CheckResult r;
  r.check = "invariance_pair";
  const ShiftThresholds th = estimate_thresholds(S, T);
  r.detail["R"] = th.R0;
  r.detail["eps0"] = th.eps0;
  json regions = json::array();
  int which = 0;
  for (const ShiftLikeMap* M : {&S, &T}) {
    for (Direction d : kDirections) {
      for (int i = M->first_sector(d); i <= M->last_sector(d); ++i) {
        const InvarianceReport rep = check_invariance_shift(*M, d, i, th.R0, th.eps0, samples, cfg.seed, cfg.threads);
        if (!rep.invariant()) r.pass = false;
        regions.push_back({{"map", which ? "T" : "S"},
                           {"region", std::string(d == Direction::Forward ? "plus" : "minus") + " sector " + std::to_string(i)},
                           {"violations", rep.violations},
                           {"min_slack", rep.min_slack}});
      }
    }
    ++which;
  }
  r.detail["regions"] = regions;
  return r;
}

CheckResult check_green_identity(const LoadedMap& m, const RunConfig& cfg) {
  CheckResult r = make("green_identity", m);
  for (Direction d : kDirections) {
    const OrbitEngine engine(m.map, d, options_for(cfg));
    auto samples = run_samples(cfg.samples, cfg.threads, [&](std::size_t i) {
      const ComplexVector P = sample_region(engine, cfg.seed, stream_id(3, int(d), i));
      Sample s;
      for (int n = 0; n <= 6; ++n) {
        const IdentityResidual res = functional_identity_residual(engine, P, n);
        s.value = std::max(s.value, res.residual / res.scale);
      }
      const OrbitRecord rec = engine.trace(P, 7);
      s.value2 = rec.region_violations;
      s.ok = s.value <= 1e-10 && rec.region_violations == 0 && rec.escape_index == 0;
      return s;
    });
    r.detail[to_string(d)] = summarize(samples, r.pass);
  }
  r.detail["tolerance"] = 1e-10;
  return r;
}

CheckResult check_green_rate(const LoadedMap& m, const RunConfig& cfg) {
  CheckResult r = make("green_rate", m);
  const int depth = std::max(cfg.depth, 12);
  for (Direction d : kDirections) {
    const OrbitEngine engine(m.map, d, options_for(cfg));
    const double D = engine.degree();
    const double log_kappa = std::log(std::abs(engine.lead()));
    const bool unit = std::abs(log_kappa) < 1e-12;
    // every correction satisfies |rho| <= 1/2 inside the region
    const double C = std::abs(log_kappa) + D * std::log(2.0);
    std::vector<double> lo(cfg.samples, std::numeric_limits<double>::infinity()), hi(cfg.samples, 0.0);
    std::vector<double> tail(cfg.samples, 1.0);
    auto samples = run_samples(cfg.samples, cfg.threads, [&](std::size_t i) {
      const ComplexVector P = sample_region(engine, cfg.seed, stream_id(4, int(d), i));
      const GreenEstimate g = green_value(engine, P, depth, 0.0);
      Sample s;
      const int start = g.cls.tag == OrbitClass::Tag::Escaping ? g.cls.index : 0;
      for (size_t n = start; n < g.increments.size(); ++n) {
        const double scaled = g.increments[n] * std::exp(engine.log_normalization(int(n) + 1));
        s.value = std::max(s.value, scaled);
        if (n + 1 < g.increments.size() && g.increments[n] > 0.0) {
          const double ratio = g.increments[n + 1] / g.increments[n] * D;
          hi[i] = std::max(hi[i], ratio);
          lo[i] = std::min(lo[i], ratio);
          tail[i] = ratio;
        }
      }
      s.ok = s.value <= C && (unit || (tail[i] <= 1.1 && tail[i] >= 0.9));
      if (s.value > C) s.error = "increment exceeds C/N(n+1)";
      else if (!s.ok) s.error = "final ratio outside [0.9/d, 1.1/d]";
      return s;
    });
    json j = summarize(samples, r.pass);
    j["C"] = C;  // worst is max |G_{n+1} - G_n| * N(n+1)
    j["ratio_window"] = unit ? "not applicable: |kappa| = 1, increments decay faster than any d^-n"
                             : "0.9/d <= final ratio <= 1.1/d; early ratios carry the region's corrections";
    const double L = *std::min_element(lo.begin(), lo.end());
    j["min_ratio_times_d"] = std::isfinite(L) ? L : 0.0;
    j["max_ratio_times_d"] = hi.empty() ? 0.0 : *std::max_element(hi.begin(), hi.end());
    j["d"] = D;
    r.detail[to_string(d)] = j;
  }
  return r;
}

CheckResult check_growth_brackets(const LoadedMap& m, const RunConfig& cfg) {
  CheckResult r = make("growth_brackets", m);
  if (is_shift(m.map)) {
    r.detail["applicable"] = false;
    return r;
  }
  for (Direction d : kDirections) {
    const OrbitEngine engine(m.map, d, options_for(cfg));
    const double delta = std::min(std::abs(engine.lead()), 1.0) / 2.0;
    auto samples = run_samples(cfg.samples, cfg.threads, [&](std::size_t i) {
      const ComplexVector P = sample_region(engine, cfg.seed, stream_id(5, int(d), i));
      const EstimateCheck e = verify_est(m.map, P, d, delta, -1, engine.R());
      Sample s;
      s.value = e.checked;
      s.ok = e.precondition_ok && e.holds;
      if (!e.precondition_ok) s.error = e.precondition_error;
      else if (!e.holds) s.error = "bracket fails at iterate " + std::to_string(e.first_failure);
      return s;
    });
    json j = summarize(samples, r.pass);
    j["delta"] = delta;
    j["R"] = engine.R();
    r.detail[to_string(d)] = j;
  }
  return r;
}

CheckResult check_growth_bounds(const LoadedMap& m, const RunConfig& cfg) {
  CheckResult r = make("growth_bounds", m);
  const auto* H = std::get_if<SkewHenonMap>(&m.map);
  if (!H) {
    r.detail["applicable"] = false;
    return r;
  }
  const OrbitEngine engine(m.map, Direction::Forward, options_for(cfg));
  auto box = run_samples(cfg.samples, cfg.threads, [&](std::size_t i) {
    Rng rng(cfg.seed, stream_id(6, 0, i));
    ComplexVector P{rng.polar(1.5 * rng.uniform()), rng.polar(3.0 * rng.uniform()), rng.polar(3.0 * rng.uniform())};
    const GrowthReport g = verify_growth_bounds(*H, P, 12, engine.R());
    Sample s;
    s.ok = g.global_holds && g.bounded_holds;
    if (!g.global_holds) s.error = "global bound fails";
    else if (!g.bounded_holds) s.error = "non-escaping bound fails";
    return s;
  });
  r.detail["bounds"] = summarize(box, r.pass);
  auto rate = run_samples(cfg.samples / 10, cfg.threads, [&](std::size_t i) {
    const ComplexVector P = sample_region(engine, cfg.seed, stream_id(6, 1, i));
    const GrowthReport g = verify_growth_bounds(*H, P, 6, engine.R());
    Sample s;
    const double ratio = g.log_growth_ratio.empty() ? 0.0 : g.log_growth_ratio.back();
    s.value = std::abs(ratio / H->d() - 1.0);
    s.ok = s.value <= 0.01;
    return s;
  });
  r.detail["growth_rate"] = summarize(rate, r.pass);
  return r;
}

CheckResult check_boettcher(const LoadedMap& m, const RunConfig& cfg) {
  CheckResult r = make("boettcher", m);
  const std::size_t n = std::max<std::size_t>(1, cfg.samples / 10);
  for (Direction d : kDirections) {
    const OrbitEngine engine(m.map, d, options_for(cfg));
    auto residual = run_samples(n, cfg.threads, [&](std::size_t i) {
      const ComplexVector P = sample_region(engine, cfg.seed, stream_id(7, int(d), i));
      Sample s;
      s.value = functional_residual(engine, P, 8);
      s.ok = s.value <= 1e-8 && boettcher(engine, P, 8).branch_ok;
      return s;
    });
    // Rays: the target coordinate grows with the others held inside the region's inner bounds.
    auto rays = run_samples(n, cfg.threads, [&](std::size_t i) {
      ComplexVector P = sample_region(engine, cfg.seed, stream_id(8, int(d), i));
      const int target = engine.trace(P, 0).target;
      Rng rng(cfg.seed, stream_id(9, int(d), i));
      const double inner = std::min(engine.R(), 10.0);
      for (size_t j = 0; j < P.size(); ++j) {
        if (static_cast<int>(j) == target) continue;
        if (!is_shift(m.map) && j == 0) {
          if (std::holds_alternative<FiberedSkewHenon>(m.map)) continue;
          P[0] = rng.polar(rng.inner_radius(1.0));
        } else {
          P[j] = rng.polar(rng.inner_radius(inner));
        }
      }
      const Complex dirn = P[target] / std::abs(P[target]);
      Sample s;
      double prev = std::numeric_limits<double>::infinity();
      for (double rad : {1e3, 1e4, 1e5, 1e6}) {
        if (rad <= engine.R() + engine.eps0()) continue;
        P[target] = rad * dirn;
        const double e = asymptotic_error(engine, P, 8);
        if (e > std::max(prev, 1e-14)) s.value2 = 1.0;  // not monotone along the ray
        prev = e;
        s.value = e;
      }
      s.ok = s.value <= 1e-3 && s.value2 == 0.0;
      return s;
    });
    json j;
    j["functional_residual"] = summarize(residual, r.pass);
    j["asymptotic"] = summarize(rays, r.pass);
    r.detail[to_string(d)] = j;
  }
  return r;
}

CheckResult check_crosscheck(const LoadedMap& m, const RunConfig& cfg) {
  CheckResult r = make("green_boettcher", m);
  const std::size_t n = std::max<std::size_t>(1, cfg.samples / 10);
  for (Direction d : kDirections) {
    const OrbitEngine engine(m.map, d, options_for(cfg));
    auto samples = run_samples(n, cfg.threads, [&](std::size_t i) {
      const ComplexVector P = sample_region(engine, cfg.seed, stream_id(10, int(d), i));
      const Crosscheck c = green_crosscheck(engine, P, 8);
      Sample s;
      s.value = c.at_depth();
      s.ok = c.decreasing() && s.value <= 1e-6;
      return s;
    });
    r.detail[to_string(d)] = summarize(samples, r.pass);
  }
  return r;
}

CheckResult check_projective(const LoadedMap& m, const RunConfig& cfg) {
  CheckResult r = make("projective_ratios", m);
  if (is_shift(m.map)) {
    r.detail["applicable"] = false;
    return r;
  }
  const std::size_t n = std::max<std::size_t>(1, cfg.samples / 10);
  const double limit = std::log(1e-6);
  for (Direction d : kDirections) {
    const OrbitEngine engine(m.map, d, options_for(cfg));
    auto samples = run_samples(n, cfg.threads, [&](std::size_t i) {
      const ComplexVector P = sample_region(engine, cfg.seed, stream_id(11, int(d), i));
      const ProjectiveRatios pr = projective_ratio(m.map, P, d, 6);
      Sample s;
      s.value = pr.log_ratio.empty() ? 0.0 : pr.log_ratio.back();
      s.value2 = pr.log_lambda_ratio.empty() ? 0.0 : pr.log_lambda_ratio.back();
      s.ok = pr.log_ratio.size() == 6 && pr.strictly_decreasing() && s.value <= limit && s.value2 <= limit;
      return s;
    });
    json j = summarize(samples, r.pass);
    j["limit_log"] = limit;
    r.detail[to_string(d)] = j;
  }
  return r;
}

CheckResult check_iterate_commutation(const LoadedMap& m) {
  CheckResult r = make("iterate_commutation", m);
  const int d1 = total_degree(to_multipoly(m.map, 1));
  if (d1 * d1 * d1 > kSymbolicDegreeBudget) {
    r.detail["skipped"] = "composed degree " + std::to_string(d1 * d1 * d1) + " exceeds budget " +
                          std::to_string(kSymbolicDegreeBudget);
    return r;
  }
  const CommutationOracle oracle(to_multipoly(m.map, 1), to_multipoly(m.map, 2));
  const CommutationCertificate c = oracle.check(DiagonalMap::identity(dimension(m.map)), true);
  const auto sol = solve_diagonal(oracle);
  const bool identity = sol && sol->C.entries() == DiagonalMap::identity(dimension(m.map)).entries();
  r.pass = c.exact_equal() && c.second_form_equal && identity;
  r.detail["certificate"] = c.describe();
  r.detail["solved_identity"] = identity;
  return r;
}

CheckResult check_relations(const LoadedMap& m) {
  CheckResult r = make("coefficient_relations", m);
  if (const auto* S = std::get_if<ShiftLikeMap>(&m.map)) {
    const auto rep = check_coefficient_relations(*S, *S);
    r.pass = rep.pass();
    r.detail["self"] = relation_json(rep);
  } else {
    const StructureConstants k = constants_of(m.map);
    const auto self = check_coefficient_relations(k, k);
    r.detail["self"] = relation_json(self);
    r.pass = self.pass();
    if (const auto* H = std::get_if<SkewHenonMap>(&m.map)) {
      const auto it = check_coefficient_relations(*H, H->iterate_map(2));
      r.detail["iterate"] = relation_json(it);
      r.pass = r.pass && it.pass();
    }
    if (m.expect) {
      const auto ex = check_coefficient_relations(k, *m.expect);
      json j = relation_json(ex);
      const bool degrees = m.expect->d == k.d && m.expect->dtilde == k.dtilde;
      j["degrees_match"] = degrees;
      r.detail["declared"] = j;
      r.pass = r.pass && ex.pass() && degrees;
    }
  }
  if (m.expect && is_shift(m.map)) {
    r.pass = false;
    r.detail["declared"] = "structure constants are only defined for the skew families";
  }
  return r;
}

bool SuiteReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

json SuiteReport::to_json() const {
  json j;
  json arr = json::array();
  std::size_t failed = 0;
  for (const auto& c : checks) {
    arr.push_back({{"check", c.check}, {"map", c.map}, {"pass", c.pass}, {"detail", c.detail}});
    if (!c.pass) ++failed;
  }
  j["checks"] = arr;
  j["total"] = checks.size();
  j["failed"] = failed;
  j["pass"] = failed == 0;
  return j;
}

SuiteReport run_verification_suite(const std::vector<LoadedMap>& maps, const RunConfig& cfg) {
  SuiteReport rep;
  for (const auto& m : maps) {
    rep.checks.push_back(check_round_trip(m, cfg));
    rep.checks.push_back(check_invariance(m, cfg, 10 * cfg.samples));
    rep.checks.push_back(check_green_identity(m, cfg));
    rep.checks.push_back(check_green_rate(m, cfg));
    rep.checks.push_back(check_growth_brackets(m, cfg));
    rep.checks.push_back(check_growth_bounds(m, cfg));
    rep.checks.push_back(check_boettcher(m, cfg));
    rep.checks.push_back(check_crosscheck(m, cfg));
    rep.checks.push_back(check_projective(m, cfg));
    rep.checks.push_back(check_iterate_commutation(m));
    rep.checks.push_back(check_relations(m));
  }
  for (size_t a = 0; a < maps.size(); ++a) {
    const auto* S = std::get_if<ShiftLikeMap>(&maps[a].map);
    if (!S) continue;
    for (size_t b = a + 1; b < maps.size(); ++b) {
      const auto* T = std::get_if<ShiftLikeMap>(&maps[b].map);
      if (!T || T->k() != S->k() || T->nu() != S->nu()) continue;
      CheckResult c = check_invariance_pair(*S, *T, cfg, 10 * cfg.samples);
      c.map = maps[a].name + "+" + maps[b].name;
      rep.checks.push_back(std::move(c));
    }
  }
  return rep;
}

}  // namespace polyauto

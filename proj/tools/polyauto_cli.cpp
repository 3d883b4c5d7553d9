#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "polyauto/boettcher.hpp"
#include "polyauto/errors.hpp"
#include "polyauto/filtration.hpp"
#include "polyauto/green.hpp"
#include "polyauto/io.hpp"
#include "polyauto/rigidity.hpp"
#include "polyauto/slice.hpp"
#include "polyauto/verify.hpp"

using namespace polyauto;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct Args {
  std::vector<std::string> maps;
  std::string map2;
  std::string slice;
  std::string point;
  std::string quantity = "green";
  std::string direction = "forward";
  bool out_given = false;
  RunConfig cfg;
};

void add_common(CLI::App* app, Args& a) {
  app->add_option("--map", a.maps, "map JSON file (repeatable for verify)");
  app->add_option("--map2", a.map2, "second map JSON file for pair operations");
  app->add_option("--slice", a.slice, "slice spec: C.re:min:max:res,C.im:min:max:res[@fixed] or JSON");
  app->add_option("--point", a.point, "point as re,re:im,... one entry per coordinate");
  app->add_option("--R", a.cfg.R, "escape radius (default: estimated threshold)");
  app->add_option("--N", a.cfg.N, "iterate horizon for Bounded classification");
  app->add_option("--depth", a.cfg.depth, "iterates used past the escape index");
  app->add_option("--tol", a.cfg.tol, "stop once Green increments fall below this");
  app->add_option("--seed", a.cfg.seed, "sampling seed");
  app->add_option("--samples", a.cfg.samples, "samples per check");
  app->add_option("--threads", a.cfg.threads, "worker threads (default: POLYAUTO_THREADS, then all cores)");
  app->add_option_function<std::string>("--out", [&a](const std::string& s) { a.cfg.out = s; a.out_given = true; },
                                        "output prefix");
  app->add_option("--quantity", a.quantity, "render quantity: green, class or escape-index");
  app->add_option("--direction", a.direction, "forward or inverse")->check(CLI::IsMember({"forward", "inverse"}));
}

Direction direction_of(const Args& a) { return a.direction == "inverse" ? Direction::Inverse : Direction::Forward; }

LoadedMap first_map(const Args& a) {
  if (a.maps.empty()) throw InputError("--map is required");
  return load_map(a.maps.front());
}

ComplexVector point_of(const Args& a, const AnyMap& m) {
  if (a.point.empty()) throw InputError("--point is required");
  return parse_point(a.point, dimension(m));
}

json vec_json(const ComplexVector& z) {
  json j = json::array();
  for (const auto& c : z) j.push_back(complex_json(c));
  return j;
}

json region_json(const Region& r) {
  json j = {{"tag", to_string(r.tag)}, {"R", r.R}};
  if (r.index >= 0) j["index"] = r.index;
  return j;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_classify(const Args& a) {
  const LoadedMap m = first_map(a);
  const ComplexVector P = point_of(a, m.map);
  const OrbitEngine engine(m.map, direction_of(a), a.cfg.orbit_options());
  const OrbitRecord rec = engine.trace(P);
  json j = {{"map", m.name},         {"direction", a.direction},          {"point", vec_json(P)},
            {"R", engine.R()},       {"class", to_string(rec.cls.tag)}};
  if (rec.escape_index) j["escape_index"] = *rec.escape_index;
  else j["iterates"] = rec.length() - 1;
  if (std::holds_alternative<ShiftLikeMap>(m.map)) {
    j["region"] = region_json(classify_shift(P, engine.R()));
  } else if (const auto* H = std::get_if<SkewHenonMap>(&m.map)) {
    j["region"] = region_json(classify_skew(P, engine.R(), *H));
  }
  print(j);
  return kPass;
}

int cmd_green(const Args& a) {
  const LoadedMap m = first_map(a);
  const ComplexVector P = point_of(a, m.map);
  const OrbitEngine engine(m.map, direction_of(a), a.cfg.orbit_options());
  const GreenEstimate g = green_value(engine, P, a.cfg.depth, a.cfg.tol);
  json j = {{"map", m.name},          {"direction", a.direction},     {"class", to_string(g.cls.tag)},
            {"G", g.value},           {"extrapolated", g.extrapolated}, {"depth", g.depth},
            {"resolved", g.resolved}, {"values", g.values},           {"increments", g.increments}};
  if (g.cls.tag == OrbitClass::Tag::Escaping) {
    j["escape_index"] = g.cls.index;
    j["fitted_ratio"] = g.fitted_ratio;
    j["fitted_C"] = g.fitted_C;
  }
  print(j);
  return kPass;
}

int cmd_orbit(const Args& a) {
  const LoadedMap m = first_map(a);
  const ComplexVector P = point_of(a, m.map);
  const OrbitEngine engine(m.map, direction_of(a), a.cfg.orbit_options());
  const OrbitRecord rec = engine.trace(P, a.cfg.depth);
  const int dim = dimension(m.map);
  std::ostringstream out;
  out << "n,region,log_norm";
  for (int i = 0; i < dim; ++i) out << ",log_abs_" << i;
  out << "\n";
  for (int n = 0; n < rec.length(); ++n) {
    out << n << ',' << to_string(rec.tags[n]) << ',' << format_double(rec.log_norms[n]);
    for (int i = 0; i < dim; ++i) out << ',' << format_double(rec.coord_logs[n][i]);
    out << '\n';
  }
  std::cout << out.str();
  std::cerr << "class " << to_string(rec.cls.tag);
  if (rec.escape_index) std::cerr << " escape_index " << *rec.escape_index;
  std::cerr << "\n";
  return kPass;
}

int cmd_boettcher(const Args& a) {
  const LoadedMap m = first_map(a);
  const ComplexVector P = point_of(a, m.map);
  const OrbitEngine engine(m.map, direction_of(a), a.cfg.orbit_options());
  const BoettcherValue b = boettcher(engine, P, a.cfg.depth);
  const BoettcherConstants k = boettcher_constants(engine);
  json partials = json::array();
  for (const auto& c : b.partials) partials.push_back(complex_json(c));
  json j = {{"map", m.name},
            {"direction", a.direction},
            {"log_phi", complex_json(b.log_value)},
            {"log_kappa", complex_json(k.log_kappa)},
            {"D", k.D},
            {"target", b.target},
            {"depth", b.depth},
            {"truncation", b.truncation},
            {"branch_ok", b.branch_ok},
            {"max_rho", b.max_rho},
            {"functional_residual", functional_residual(engine, P, a.cfg.depth)},
            {"partials", partials}};
  const Complex phi = b.value.to_complex();
  if (std::isfinite(phi.real()) && std::isfinite(phi.imag())) j["phi"] = complex_json(phi);
  print(j);
  return b.valid() ? kPass : kFail;
}

int cmd_render(const Args& a) {
  const LoadedMap m = first_map(a);
  if (a.slice.empty()) throw InputError("--slice is required");
  const SliceSpec slice = parse_slice(a.slice, dimension(m.map));
  const RenderResult r = render_slice(m.map, slice, a.cfg, parse_quantity(a.quantity), direction_of(a));
  write_file(a.cfg.out + ".pgm", r.pgm);
  write_file(a.cfg.out + ".csv", r.csv);
  std::cout << a.cfg.out << ".pgm " << r.width << "x" << r.height << " q_max=" << format_double(r.q_max) << "\n";
  return kPass;
}

int cmd_verify(const Args& a) {
  std::vector<LoadedMap> maps;
  for (const auto& p : a.maps) maps.push_back(load_map(p));
  const SuiteReport rep = run_verification_suite(maps, a.cfg);
  const std::string text = rep.to_json().dump(2) + "\n";
  if (a.out_given) write_file(a.cfg.out + ".json", text);
  for (const auto& c : rep.checks) std::cout << (c.pass ? "PASS " : "FAIL ") << c.map << " " << c.check << "\n";
  std::cout << (rep.pass() ? "all checks passed" : "verification failures") << " (" << rep.checks.size()
            << " checks)\n";
  return rep.pass() ? kPass : kFail;
}

int cmd_rigidity(const Args& a) {
  const LoadedMap A = first_map(a);
  if (a.map2.empty()) throw InputError("--map2 is required");
  const LoadedMap B = load_map(a.map2);
  if (dimension(A.map) != dimension(B.map)) throw ArityMismatch("maps have different dimensions");
  // shifts are compared through their block iterates S^m
  const auto block = [](const AnyMap& m) {
    const auto* S = std::get_if<ShiftLikeMap>(&m);
    return to_multipoly(m, S ? S->m() : 1);
  };
  const CommutationOracle oracle(block(A.map), block(B.map));
  json j = {{"map", A.name}, {"map2", B.name}};
  bool pass = true;
  if (const auto sol = solve_diagonal(oracle)) {
    json C = json::array();
    for (const auto& e : sol->C.entries()) C.push_back(e.to_string());
    j["commutation"] = {{"verdict", to_string(sol->certificate.verdict)},
                        {"C", C},
                        {"unimodular", sol->unimodular},
                        {"second_form_equal", sol->second_form_equal},
                        {"certificate", sol->certificate.describe()}};
    if (const auto* S = std::get_if<ShiftLikeMap>(&A.map))
      j["commutation"]["shift_block_shape"] = has_shift_block_shape(sol->C, S->k(), S->nu());
    pass = sol->certificate.exact_equal();
  } else {
    const DiagonalSweep sw = sweep_root_diagonals(oracle);
    j["commutation"] = {{"verdict", "Mismatch"},
                        {"sweep_order", sw.order},
                        {"candidates", sw.candidates},
                        {"matches", sw.matches}};
    pass = false;
  }
  const auto* S = std::get_if<ShiftLikeMap>(&A.map);
  const auto* T = std::get_if<ShiftLikeMap>(&B.map);
  if (S && T) {
    const auto rep = check_coefficient_relations(*S, *T);
    j["relations"] = relation_json(rep);
    pass = pass && rep.pass();
  } else if (!S && !T) {
    const auto k = [](const AnyMap& m) -> StructureConstants {
      if (const auto* H = std::get_if<SkewHenonMap>(&m)) return structure_constants(*H);
      const auto& F = std::get<FiberedSkewHenon>(m);
      return {F.d(), F.d(), F.c_H(), F.c_H_prime()};
    };
    const auto rep = check_coefficient_relations(k(A.map), k(B.map));
    j["relations"] = relation_json(rep);
    pass = pass && rep.pass();
  }
  if (!a.slice.empty()) {
    const SliceSpec slice = parse_slice(a.slice, dimension(A.map));
    GridOptions opt;
    opt.depth = a.cfg.depth;
    opt.horizon = a.cfg.N;
    opt.R = a.cfg.R;
    opt.threads = a.cfg.threads;
    const GridComparison g = compare_green_on_grid(A.map, B.map, slice, direction_of(a), opt);
    j["grid"] = {{"sup_discrepancy", g.sup_discrepancy},
                 {"agreement", g.agreement},
                 {"pixels", g.pixels},
                 {"resolved", g.resolved},
                 {"undetermined", g.undetermined},
                 {"disagreements", g.disagreements},
                 {"R", g.R},
                 {"alignment", g.alignment}};
  }
  print(j);
  return pass ? kPass : kFail;
}

int cmd_thresholds(const Args& a) {
  const LoadedMap m = first_map(a);
  json j = {{"map", m.name}, {"family", family_name(m.map)}};
  if (const auto* S = std::get_if<ShiftLikeMap>(&m.map)) {
    ShiftThresholds t = estimate_thresholds(*S);
    if (!a.map2.empty()) {
      const LoadedMap B = load_map(a.map2);
      const auto* T = std::get_if<ShiftLikeMap>(&B.map);
      if (!T) throw InputError("--map2 must be a shift-like map");
      t = estimate_thresholds(*S, *T);
    }
    j.update({{"R0", t.R0}, {"eps0", t.eps0}, {"eps", t.eps}, {"R_eps", t.R_eps}});
  } else {
    const SkewThresholds t = std::holds_alternative<SkewHenonMap>(m.map)
                                 ? estimate_skew_thresholds(std::get<SkewHenonMap>(m.map))
                                 : estimate_fibered_thresholds(std::get<FiberedSkewHenon>(m.map));
    j.update({{"R", t.R},
              {"R0_plus", t.R0_plus},
              {"R0_minus", t.R0_minus},
              {"delta_plus", t.delta_plus},
              {"delta_minus", t.delta_minus},
              {"dtilde", t.filtration.dtilde},
              {"plus_mode", to_string(t.filtration.plus)},
              {"minus_mode", to_string(t.filtration.minus)}});
  }
  print(j);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polyauto: escape rates, Green functions and Boettcher coordinates of polynomial automorphisms"};
  app.require_subcommand(1);
  Args args;
  struct Cmd {
    const char* name;
    const char* help;
    int (*run)(const Args&);
  };
  const Cmd cmds[] = {
      {"classify", "classify the orbit of --point", cmd_classify},
      {"green", "Green function approximants at --point", cmd_green},
      {"orbit", "log-moduli of the orbit of --point as CSV", cmd_orbit},
      {"boettcher", "Boettcher coordinate at --point", cmd_boettcher},
      {"render", "render --quantity over --slice to PREFIX.pgm and PREFIX.csv", cmd_render},
      {"verify", "run the verification suite over every --map", cmd_verify},
      {"rigidity", "commutation, coefficient relations and optional Green grid for --map and --map2", cmd_rigidity},
      {"thresholds", "estimated escape thresholds of --map", cmd_thresholds},
  };
  int (*chosen)(const Args&) = nullptr;
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, args);
    sub->callback([&chosen, run = c.run] { chosen = run; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  try {
    return chosen(args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}

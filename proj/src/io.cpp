#include "polyauto/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "polyauto/errors.hpp"
#include "polyauto/parallel.hpp"

namespace polyauto {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw InputError(path + key + ": missing field");
  return j.at(key);
}

int int_field(const json& j, const char* key, const std::string& path) {
  const json& v = field(j, key, path);
  if (!v.is_number_integer()) throw InputError(path + key + ": expected an integer");
  return v.get<int>();
}

UniPoly unipoly_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected an array of coefficients");
  std::vector<Complex> c;
  for (size_t i = 0; i < j.size(); ++i) c.push_back(complex_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return UniPoly(std::move(c));
}

json unipoly_json(const UniPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(complex_json(c));
  return a;
}

std::vector<HenonFactor> factors_from_json(const json& j, const std::string& path) {
  const json& fs = field(j, "factors", path);
  if (!fs.is_array() || fs.empty()) throw InputError(path + "factors: expected a non-empty array");
  std::vector<HenonFactor> out;
  for (size_t i = 0; i < fs.size(); ++i) {
    const std::string fp = path + "factors[" + std::to_string(i) + "].";
    const json& pj = field(fs[i], "p", fp);
    if (!pj.is_array()) throw InputError(fp + "p: expected an array indexed by the power of y");
    std::vector<UniPoly> coeffs;
    for (size_t e = 0; e < pj.size(); ++e) coeffs.push_back(unipoly_from_json(pj[e], fp + "p[" + std::to_string(e) + "]"));
    HenonFactor f{ParamPolynomial(std::move(coeffs)), complex_from_json(field(fs[i], "delta", fp), fp + "delta")};
    if (f.delta == 0.0) throw InputError(fp + "delta: must be nonzero (each Henon factor needs delta_j != 0)");
    if (f.degree() < 2) throw InputError(fp + "p: degree in y must be at least 2");
    if (!f.p.leading_is_constant())
      throw InputError(fp + "p: the leading coefficient in y must not depend on lambda");
    out.push_back(std::move(f));
  }
  return out;
}

json factors_json(const std::vector<HenonFactor>& factors) {
  json fs = json::array();
  for (const auto& f : factors) {
    json p = json::array();
    for (const auto& c : f.p.coeffs()) p.push_back(unipoly_json(c));
    fs.push_back({{"p", p}, {"delta", complex_json(f.delta)}});
  }
  return fs;
}

void put_u16be(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v >> 8));
  s.push_back(static_cast<char>(v & 0xff));
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError(path + ": expected a number or [re, im]");
}

LoadedMap map_from_json(const json& j, const std::string& name) {
  if (!j.is_object()) throw InputError("map: expected a JSON object");
  const json& fam = field(j, "family", "");
  if (!fam.is_string()) throw InputError("family: expected a string");
  const std::string family = fam.get<std::string>();
  auto build = [&]() -> AnyMap {
    if (family == "shift") {
      const int k = int_field(j, "k", "");
      const int nu = int_field(j, "nu", "");
      if (k < 3) throw InputError("k: must be at least 3");
      if (nu < 1 || nu >= k) throw InputError("nu: must satisfy 1 <= nu < k");
      const Complex a = complex_from_json(field(j, "a", ""), "a");
      if (a == 0.0) throw InputError("a: must be nonzero (shift-like maps require 0 != a)");
      UniPoly p = unipoly_from_json(field(j, "p", ""), "p");
      if (p.degree() < 2) throw InputError("p: degree must be at least 2");
      return ShiftLikeMap(k, nu, a, std::move(p));
    } else if (family == "skew-affine") {
      const Complex c = complex_from_json(field(j, "c", ""), "c");
      if (c == 0.0) throw InputError("c: must be nonzero (the base map is lambda -> c lambda with c != 0)");
      return SkewHenonMap(c, factors_from_json(j, ""));
    } else if (family == "skew-circle") {
      const json& t = field(j, "theta", "");
      if (!t.is_number()) throw InputError("theta: expected a number");
      const double theta = t.get<double>();
      if (!(theta >= 0.0 && theta < 1.0)) throw InputError("theta: must lie in [0, 1)");
      return FiberedSkewHenon(theta, factors_from_json(j, ""));
    }
    throw InputError("family: unknown family '" + family + "' (shift, skew-affine, skew-circle)");
  };
  LoadedMap m{j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : name, build(), std::nullopt};
  if (j.contains("expect")) {
    const json& e = j["expect"];
    StructureConstants s;
    s.d = int_field(e, "d", "expect.");
    s.dtilde = int_field(e, "dtilde", "expect.");
    s.c_H = complex_from_json(field(e, "c_H", "expect."), "expect.c_H");
    s.c_H_prime = complex_from_json(field(e, "c_H_prime", "expect."), "expect.c_H_prime");
    m.expect = s;
  }
  return m;
}

json map_to_json(const LoadedMap& m) {
  json j;
  if (!m.name.empty()) j["name"] = m.name;
  if (const auto* S = std::get_if<ShiftLikeMap>(&m.map)) {
    j["family"] = "shift";
    j["k"] = S->k();
    j["nu"] = S->nu();
    j["a"] = complex_json(S->a());
    j["p"] = unipoly_json(S->p());
  } else if (const auto* H = std::get_if<SkewHenonMap>(&m.map)) {
    j["family"] = "skew-affine";
    j["c"] = complex_json(H->c());
    j["factors"] = factors_json(H->factors());
  } else {
    const auto& F = std::get<FiberedSkewHenon>(m.map);
    j["family"] = "skew-circle";
    j["theta"] = F.theta();
    j["factors"] = factors_json(F.factors());
  }
  if (m.expect) {
    j["expect"] = {{"d", m.expect->d},
                   {"dtilde", m.expect->dtilde},
                   {"c_H", complex_json(m.expect->c_H)},
                   {"c_H_prime", complex_json(m.expect->c_H_prime)}};
  }
  return j;
}

LoadedMap load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open map file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (const auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  try {
    return map_from_json(j, stem);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void save_map(const LoadedMap& m, const std::string& path) { write_file(path, map_to_json(m).dump(2) + "\n"); }

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

OrbitOptions RunConfig::orbit_options() const {
  OrbitOptions o;
  o.R = R;
  o.horizon = N;
  o.depth = depth;
  return o;
}

Quantity parse_quantity(const std::string& s) {
  if (s == "green") return Quantity::Green;
  if (s == "class") return Quantity::Class;
  if (s == "escape-index") return Quantity::EscapeIndex;
  throw InputError("quantity must be green, class or escape-index");
}

int class_code(OrbitClass::Tag t) {
  switch (t) {
    case OrbitClass::Tag::Bounded: return 0;
    case OrbitClass::Tag::Undetermined: return 1;
    default: return 2;
  }
}

RenderResult render_slice(const AnyMap& map, const SliceSpec& slice, const RunConfig& cfg, Quantity q,
                          Direction dir) {
  if (slice.dim != dimension(map)) throw ArityMismatch("slice dimension does not match the map");
  slice.validate();
  const OrbitEngine engine(map, dir, cfg.orbit_options());
  struct Pixel {
    OrbitClass cls;
    int escape = -1;
    double G = 0.0;
  };
  std::vector<Pixel> px(slice.pixels());
  parallel_for(px.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
    const OrbitRecord rec = engine.trace(slice.point(i), cfg.depth);
    const GreenEstimate g = green_from_record(engine, rec, cfg.depth, 0.0);
    px[i] = {rec.cls, rec.escape_index.value_or(-1), g.value};
  });

  RenderResult r;
  r.width = slice.axis1.res;
  r.height = slice.axis2.res;
  std::vector<double> vals(px.size());
  for (size_t i = 0; i < px.size(); ++i) {
    switch (q) {
      case Quantity::Green: vals[i] = px[i].G; break;
      case Quantity::Class: vals[i] = class_code(px[i].cls.tag); break;
      case Quantity::EscapeIndex: vals[i] = std::max(0, px[i].escape); break;
    }
    if (std::isfinite(vals[i])) r.q_max = std::max(r.q_max, vals[i]);
  }
  r.pgm = "P5\n" + std::to_string(r.width) + " " + std::to_string(r.height) + "\n65535\n";
  std::ostringstream csv;
  csv << "# q_max=" << format_double(r.q_max) << "\n";
  csv << "axis1,axis2,class,escape_index,G\n";
  for (size_t i = 0; i < px.size(); ++i) {
    double t = r.q_max > 0.0 ? vals[i] / r.q_max : 0.0;
    if (!std::isfinite(t)) t = vals[i] > 0 ? 1.0 : 0.0;
    const auto v = static_cast<std::uint16_t>(std::lround(std::clamp(t, 0.0, 1.0) * 65535.0));
    r.pixels.push_back(v);
    put_u16be(r.pgm, v);
    csv << format_double(slice.value1(i)) << ',' << format_double(slice.value2(i)) << ','
        << to_string(px[i].cls.tag) << ',' << px[i].escape << ',' << format_double(px[i].G) << '\n';
  }
  r.csv = csv.str();
  return r;
}

}  // namespace polyauto

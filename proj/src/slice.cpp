#include "polyauto/slice.hpp"

#include <json.hpp>
#include <sstream>

#include "polyauto/errors.hpp"

namespace polyauto {

namespace {

int coord_index(const std::string& name, int dim) {
  int idx = -1;
  if (name == "l" || name == "lambda") idx = 0;
  else if (name == "x") idx = 1;
  else if (name == "y") idx = 2;
  else {
    try {
      size_t used = 0;
      idx = std::stoi(name, &used);
      if (used != name.size()) idx = -1;
    } catch (const std::exception&) {
      idx = -1;
    }
  }
  if (idx < 0 || idx >= dim) throw InputError("slice: unknown coordinate '" + name + "'");
  return idx;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("bad number for " + what + ": '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

SliceAxis parse_axis(const std::string& text, int dim) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) throw InputError("slice: axis must read C.part:min:max:res, got '" + text + "'");
  const auto dot = parts[0].rfind('.');
  if (dot == std::string::npos) throw InputError("slice: axis needs a .re or .im selector");
  SliceAxis a;
  a.coord = coord_index(parts[0].substr(0, dot), dim);
  const std::string part = parts[0].substr(dot + 1);
  if (part == "re") a.imag = false;
  else if (part == "im") a.imag = true;
  else throw InputError("slice: part selector must be re or im");
  a.min = to_double(parts[1], "min");
  a.max = to_double(parts[2], "max");
  a.res = static_cast<int>(to_double(parts[3], "res"));
  return a;
}

SliceAxis axis_from_json(const nlohmann::json& j, int dim) {
  SliceAxis a;
  const auto& c = j.at("coord");
  a.coord = c.is_string() ? coord_index(c.get<std::string>(), dim) : c.get<int>();
  const std::string part = j.value("part", "re");
  if (part != "re" && part != "im") throw InputError("slice: part selector must be re or im");
  a.imag = part == "im";
  a.min = j.at("min").get<double>();
  a.max = j.at("max").get<double>();
  a.res = j.at("res").get<int>();
  return a;
}

}  // namespace

void SliceSpec::validate() const {
  if (dim <= 0) throw InputError("slice: dimension must be positive");
  if (static_cast<int>(fixed.size()) != dim) throw ArityMismatch("slice: fixed point has the wrong dimension");
  for (const SliceAxis* a : {&axis1, &axis2}) {
    if (a->coord < 0 || a->coord >= dim) throw InputError("slice: axis coordinate out of range");
    if (a->res < 2) throw InputError("slice: resolution must be at least 2");
    if (!(a->min < a->max)) throw InputError("slice: axis needs min < max");
  }
  if (axis1.coord == axis2.coord && axis1.imag == axis2.imag)
    throw InputError("slice: the two axes sweep the same real degree of freedom");
}

ComplexVector SliceSpec::point(std::size_t pixel) const {
  ComplexVector z = fixed;
  const auto set = [&](const SliceAxis& a, double v) {
    Complex& c = z[a.coord];
    c = a.imag ? Complex(c.real(), v) : Complex(v, c.imag());
  };
  set(axis1, value1(pixel));
  set(axis2, value2(pixel));
  return z;
}

double SliceSpec::value1(std::size_t pixel) const { return axis1.at(static_cast<int>(pixel % axis1.res)); }

double SliceSpec::value2(std::size_t pixel) const {
  const int row = static_cast<int>(pixel / axis1.res);
  return axis2.at(axis2.res - 1 - row);
}

SliceSpec parse_slice(const std::string& text, int dim) {
  SliceSpec s;
  s.dim = dim;
  s.fixed.assign(dim, Complex(0.0));
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
      if (j.contains("dim") && j["dim"].get<int>() != dim) throw ArityMismatch("slice: dimension does not match the map");
      const auto& axes = j.at("axes");
      if (axes.size() != 2) throw InputError("slice: exactly two sweep axes are required");
      s.axis1 = axis_from_json(axes[0], dim);
      s.axis2 = axis_from_json(axes[1], dim);
      if (j.contains("fixed")) {
        const auto& f = j["fixed"];
        if (static_cast<int>(f.size()) != dim) throw ArityMismatch("slice: fixed point has the wrong dimension");
        for (int i = 0; i < dim; ++i) s.fixed[i] = {f[i].at(0).get<double>(), f[i].at(1).get<double>()};
      }
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("slice: ") + e.what());
    }
  } else {
    const auto at = text.find('@');
    const auto axes = split(text.substr(0, at), ',');
    if (axes.size() != 2) throw InputError("slice: exactly two sweep axes are required");
    s.axis1 = parse_axis(axes[0], dim);
    s.axis2 = parse_axis(axes[1], dim);
    if (at != std::string::npos) s.fixed = parse_point(text.substr(at + 1), dim);
  }
  s.validate();
  return s;
}

ComplexVector parse_point(const std::string& text, int dim) {
  const auto vals = split(text, ',');
  if (static_cast<int>(vals.size()) != dim)
    throw ArityMismatch("point: expected " + std::to_string(dim) + " coordinates, got " + std::to_string(vals.size()));
  ComplexVector z(dim);
  for (int i = 0; i < dim; ++i) {
    const auto ri = split(vals[i], ':');
    if (ri.empty() || ri.size() > 2) throw InputError("point: coordinate must read re or re:im");
    z[i] = {to_double(ri[0], "point"), ri.size() == 2 ? to_double(ri[1], "point") : 0.0};
  }
  return z;
}

}  // namespace polyauto

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyauto/boettcher.hpp"
#include "polyauto/errors.hpp"
#include "polyauto/io.hpp"
#include "polyauto/verify.hpp"

namespace py = pybind11;
using namespace polyauto;

namespace {

Direction dir_of(const std::string& s) {
  if (s == "forward") return Direction::Forward;
  if (s == "inverse") return Direction::Inverse;
  throw InputError("direction: expected forward or inverse, got " + s);
}

OrbitOptions options(double R, int N) {
  OrbitOptions o;
  o.R = R;
  o.horizon = N;
  return o;
}

ComplexVector checked_point(const LoadedMap& m, const ComplexVector& P) {
  if (static_cast<int>(P.size()) != dimension(m.map))
    throw ArityMismatch("point has " + std::to_string(P.size()) + " coordinates, map needs " +
                        std::to_string(dimension(m.map)));
  return P;
}

py::dict green(const LoadedMap& m, const ComplexVector& P, const std::string& direction, int depth, double tol,
               double R, int N) {
  const OrbitEngine e(m.map, dir_of(direction), options(R, N));
  const GreenEstimate g = green_value(e, checked_point(m, P), depth, tol);
  py::dict d;
  d["value"] = g.value;
  d["values"] = g.values;
  d["increments"] = g.increments;
  d["extrapolated"] = g.extrapolated;
  d["resolved"] = g.resolved;
  d["class"] = to_string(g.cls.tag);
  d["index"] = g.cls.index;
  d["R"] = e.R();
  return d;
}

py::dict boettcher_value(const LoadedMap& m, const ComplexVector& P, const std::string& direction, int depth,
                         double R) {
  const OrbitEngine e(m.map, dir_of(direction), options(R, 200));
  const ComplexVector Q = checked_point(m, P);
  const BoettcherValue b = boettcher(e, Q, depth);
  py::dict d;
  d["log_phi"] = b.log_value;
  d["partials"] = b.partials;
  d["branch_ok"] = b.branch_ok;
  d["functional_residual"] = functional_residual(e, Q, depth);
  d["log_kappa"] = boettcher_constants(e).log_kappa;
  return d;
}

py::dict render(const LoadedMap& m, const std::string& slice, const std::string& quantity, int threads, double R,
                int N, int depth, const std::string& direction) {
  RunConfig cfg;
  cfg.threads = threads;
  cfg.R = R;
  cfg.N = N;
  cfg.depth = depth;
  const RenderResult r =
      render_slice(m.map, parse_slice(slice, dimension(m.map)), cfg, parse_quantity(quantity), dir_of(direction));
  py::dict d;
  d["width"] = r.width;
  d["height"] = r.height;
  d["q_max"] = r.q_max;
  d["pixels"] = r.pixels;
  d["pgm"] = py::bytes(r.pgm);
  d["csv"] = r.csv;
  return d;
}

std::string verify(const std::vector<LoadedMap>& maps, std::size_t samples, std::uint64_t seed, int threads) {
  RunConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.threads = threads;
  return run_verification_suite(maps, cfg).to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_polyauto, mod) {
  // translators run most recent first, so the base class goes first
  const auto& base = py::register_exception<Error>(mod, "Error", PyExc_ValueError);
  py::register_exception<InputError>(mod, "InputError", base.ptr());
  py::register_exception<ArityMismatch>(mod, "ArityMismatch", base.ptr());
  py::register_exception<SectorViolation>(mod, "SectorViolation", base.ptr());

  py::class_<LoadedMap>(mod, "Map")
      .def_readonly("name", &LoadedMap::name)
      .def_property_readonly("family", [](const LoadedMap& m) { return family_name(m.map); })
      .def_property_readonly("dimension", [](const LoadedMap& m) { return dimension(m.map); })
      .def("apply",
           [](const LoadedMap& m, const ComplexVector& P, const std::string& direction) {
             return apply(m.map, checked_point(m, P), dir_of(direction));
           },
           py::arg("point"), py::arg("direction") = "forward")
      .def("to_json", [](const LoadedMap& m) { return map_to_json(m).dump(); })
      .def("__repr__", [](const LoadedMap& m) { return "<polyauto.Map " + m.name + " (" + family_name(m.map) + ")>"; });

  mod.def("load_map", &load_map, py::arg("path"));
  mod.def("map_from_json", [](const std::string& text) { return map_from_json(nlohmann::json::parse(text)); },
          py::arg("text"));
  mod.def("classify",
          [](const LoadedMap& m, const ComplexVector& P, const std::string& direction, double R, int N) {
            const OrbitEngine e(m.map, dir_of(direction), options(R, N));
            const OrbitClass c = classify_orbit(m.map, checked_point(m, P), e.direction(), e.R(), N);
            return py::make_tuple(to_string(c.tag), c.index);
          },
          py::arg("map"), py::arg("point"), py::arg("direction") = "forward", py::arg("R") = 0.0, py::arg("N") = 200);
  mod.def("green", &green, py::arg("map"), py::arg("point"), py::arg("direction") = "forward", py::arg("depth") = 8,
          py::arg("tol") = 0.0, py::arg("R") = 0.0, py::arg("N") = 200);
  mod.def("boettcher", &boettcher_value, py::arg("map"), py::arg("point"), py::arg("direction") = "forward",
          py::arg("depth") = 8, py::arg("R") = 0.0);
  mod.def("render", &render, py::arg("map"), py::arg("slice"), py::arg("quantity") = "green", py::arg("threads") = 0,
          py::arg("R") = 0.0, py::arg("N") = 200, py::arg("depth") = 8, py::arg("direction") = "forward");
  mod.def("verify_json", &verify, py::arg("maps"), py::arg("samples") = 200, py::arg("seed") = 1,
          py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
}

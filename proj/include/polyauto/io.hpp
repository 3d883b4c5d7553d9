#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "polyauto/green.hpp"
#include "polyauto/maps.hpp"
#include "polyauto/slice.hpp"

namespace polyauto {

struct LoadedMap {
  std::string name;
  AnyMap map;
  std::optional<StructureConstants> expect;  // declared constants, checked by the suite
};

LoadedMap map_from_json(const nlohmann::json& j, const std::string& name = "");
nlohmann::json map_to_json(const LoadedMap& m);
LoadedMap load_map(const std::string& path);
void save_map(const LoadedMap& m, const std::string& path);

struct RunConfig {
  double R = 0.0;  // <= 0 uses the estimated thresholds
  int N = 200;
  int depth = 8;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  int threads = 0;
  std::size_t samples = 1000;
  std::string out = "out";
  OrbitOptions orbit_options() const;
};

enum class Quantity { Green, Class, EscapeIndex };
Quantity parse_quantity(const std::string& s);
int class_code(OrbitClass::Tag t);  // Bounded 0, Undetermined 1, Escaping 2

struct RenderResult {
  int width = 0;
  int height = 0;
  double q_max = 0.0;
  std::vector<std::uint16_t> pixels;
  std::string pgm;
  std::string csv;
};

RenderResult render_slice(const AnyMap& map, const SliceSpec& slice, const RunConfig& cfg, Quantity q,
                          Direction dir = Direction::Forward);
void write_file(const std::string& path, const std::string& bytes);

// Shortest decimal that parses back to the same double.
std::string format_double(double v);
nlohmann::json complex_json(Complex z);
Complex complex_from_json(const nlohmann::json& j, const std::string& path);

}  // namespace polyauto

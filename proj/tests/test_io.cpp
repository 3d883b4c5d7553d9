#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "polyauto/errors.hpp"
#include "polyauto/io.hpp"
#include "polyauto/verify.hpp"

using namespace polyauto;
using nlohmann::json;

namespace {

const std::string kMaps = POLYAUTO_MAPS_DIR;

std::string error_of(const json& j) {
  try {
    map_from_json(j);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("polyauto_test_" + name)).string();
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("loading a shift file") {
  const LoadedMap m = load_map(kMaps + "/S1.json");
  CHECK(m.name == "S1");
  const auto* S = std::get_if<ShiftLikeMap>(&m.map);
  REQUIRE(S);
  CHECK(S->k() == 3);
  CHECK(S->m() == 2);
}

TEST_CASE("schema errors name the field") {
  CHECK(error_of(json::parse(R"({"family":"shift","k":3,"nu":1,"a":0,"p":[0,0,1]})")).find("a: must be nonzero") != std::string::npos);
  const std::string d0 = error_of(json::parse(
      R"({"family":"skew-affine","c":2,"factors":[{"p":[[0],[0],[1]],"delta":1},{"p":[[0],[0],[1]],"delta":0}]})"));
  CHECK(d0.find("factors[1].delta") != std::string::npos);
  CHECK(error_of(json::parse(R"({"family":"shift","k":3,"nu":1,"a":1})")).find("p: missing field") != std::string::npos);
  CHECK(error_of(json::parse(R"({"family":"torus"})")).find("unknown family") != std::string::npos);
  CHECK(error_of(json::parse(R"({"family":"skew-circle","theta":1.5,"factors":[{"p":[[0],[0],[1]],"delta":1}]})")).find("theta") != std::string::npos);
  CHECK(error_of(json::parse(R"({"family":"skew-affine","c":0,"factors":[{"p":[[0],[0],[1]],"delta":1}]})")).find("c:") != std::string::npos);
  CHECK(error_of(json::parse(R"({"family":"skew-affine","c":1,"factors":[{"p":[[0],[0],[0,1]],"delta":1}]})")).find("leading") != std::string::npos);
  CHECK_THROWS_AS(load_map(kMaps + "/controls/shift_a0.json"), InputError);
  CHECK_THROWS_AS(load_map(kMaps + "/controls/skew_delta0.json"), InputError);
  CHECK_THROWS_AS(load_map(kMaps + "/does_not_exist.json"), InputError);
}

TEST_CASE("save and load round trip exactly") {
  for (const char* name : {"S1", "S2", "S3", "H1", "H2", "H3", "H4", "H5", "F1", "F2", "controls/H1_corrupt"}) {
    const LoadedMap m = load_map(kMaps + "/" + name + ".json");
    const std::string path = tmp_path("rt.json");
    save_map(m, path);
    const LoadedMap back = load_map(path);
    CHECK(back.map == m.map);
    CHECK(back.name == m.name);
    CHECK(back.expect.has_value() == m.expect.has_value());
    CHECK(map_to_json(back) == map_to_json(m));
    std::filesystem::remove(path);
  }
}

TEST_CASE("shortest round-trip formatting") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 2.302585092994046, -0.0, 123456789.0}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e300 * 1e300) == "inf");
}

TEST_CASE("slice and point parsing") {
  const SliceSpec s = parse_slice("y.re:-3:3:4,y.im:-1:1:2@0.5,0:1,0", 3);
  CHECK(s.pixels() == 8);
  CHECK(s.fixed[1] == Complex(0, 1));
  CHECK(s.point(0)[2] == Complex(-3, 1));
  CHECK(s.point(7)[2] == Complex(3, -1));
  const SliceSpec j = parse_slice(R"({"dim":3,"axes":[{"coord":2,"part":"re","min":-1,"max":1,"res":3},{"coord":1,"part":"im","min":0,"max":2,"res":3}]})", 3);
  CHECK(j.pixels() == 9);
  CHECK_THROWS_AS(parse_slice("y.re:-3:3:4", 3), InputError);
  CHECK_THROWS_AS(parse_slice("q.re:-3:3:4,y.im:0:1:2", 3), InputError);
  CHECK_THROWS_AS(parse_slice("y.re:-3:3:4,y.im:0:1:2@1,2", 3), ArityMismatch);
  CHECK(parse_point("1,2:3,-4", 3) == ComplexVector{1, Complex(2, 3), -4});
  CHECK_THROWS_AS(parse_point("1,2", 3), ArityMismatch);
  CHECK_THROWS_AS(parse_point("1,x,2", 3), InputError);
}

TEST_CASE("a fixed point neighbourhood renders as a constant class image") {
  const SliceSpec s = parse_slice("y.re:-0.001:0.001:2,y.im:-0.001:0.001:2", 3);
  RunConfig cfg;
  const RenderResult r = render_slice(testing::simple_henon(), s, cfg, Quantity::Class);
  CHECK(r.width == 2);
  CHECK(r.height == 2);
  for (auto v : r.pixels) CHECK(v == r.pixels.front());
  CHECK(r.csv.find("Escaping") == std::string::npos);
}

TEST_CASE("PGM and CSV layout") {
  const SliceSpec s = parse_slice("y.re:-3:3:5,y.im:-3:3:3", 3);
  RunConfig cfg;
  const RenderResult r = render_slice(testing::simple_henon(), s, cfg, Quantity::Green);
  const std::string header = "P5\n5 3\n65535\n";
  REQUIRE(r.pgm.size() == header.size() + 2 * 15);
  CHECK(r.pgm.substr(0, header.size()) == header);
  for (size_t i = 0; i < r.pixels.size(); ++i) {
    const auto hi = static_cast<unsigned char>(r.pgm[header.size() + 2 * i]);
    const auto lo = static_cast<unsigned char>(r.pgm[header.size() + 2 * i + 1]);
    CHECK((hi << 8 | lo) == r.pixels[i]);
  }
  CHECK(*std::max_element(r.pixels.begin(), r.pixels.end()) == 65535);
  std::istringstream csv(r.csv);
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("# q_max=", 0) == 0);
  std::getline(csv, line);
  CHECK(line == "axis1,axis2,class,escape_index,G");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 15);
}

TEST_CASE("renders are deterministic across thread counts") {
  const SliceSpec s = parse_slice("y.re:-3:3:24,y.im:-3:3:24@0.3,0.2,0", 3);
  RunConfig one, many;
  one.threads = 1;
  many.threads = 8;
  const AnyMap m = load_map(kMaps + "/H3.json").map;
  const RenderResult a = render_slice(m, s, one, Quantity::Green), b = render_slice(m, s, many, Quantity::Green);
  CHECK(a.pgm == b.pgm);
  CHECK(a.csv == b.csv);
  CHECK(render_slice(m, s, one, Quantity::Green).csv == a.csv);
}

TEST_CASE("verification suite edge cases") {
  RunConfig cfg;
  cfg.samples = 20;
  const SuiteReport empty = run_verification_suite({}, cfg);
  CHECK(empty.checks.empty());
  CHECK(empty.pass());
  CHECK(empty.to_json()["total"] == 0);

  const SuiteReport bad = run_verification_suite({load_map(kMaps + "/controls/H1_corrupt.json")}, cfg);
  CHECK(!bad.pass());
  bool flagged = false;
  for (const auto& c : bad.checks) {
    if (c.check == "coefficient_relations") {
      CHECK(!c.pass);
      CHECK(!c.detail["declared"]["pass"].get<bool>());
      flagged = true;
    } else {
      CHECK(c.pass);
    }
  }
  CHECK(flagged);
}

TEST_CASE("verification suite is deterministic") {
  RunConfig a, b;
  a.samples = b.samples = 30;
  a.threads = 1;
  b.threads = 8;
  const std::vector<LoadedMap> maps{load_map(kMaps + "/S1.json"), load_map(kMaps + "/F1.json")};
  const auto ra = run_verification_suite(maps, a), rb = run_verification_suite(maps, b);
  CHECK(ra.pass());
  CHECK(ra.to_json().dump() == rb.to_json().dump());
}

}

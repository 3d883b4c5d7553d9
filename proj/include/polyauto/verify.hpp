#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "polyauto/io.hpp"
#include "polyauto/rigidity.hpp"

namespace polyauto {

// Exact compositions whose total degree would exceed this are skipped and reported as such.
inline constexpr int kSymbolicDegreeBudget = 64;

struct CheckResult {
  std::string check;
  std::string map;
  bool pass = true;
  nlohmann::json detail = nlohmann::json::object();
};

// Points of the escaping region for the engine's direction (sector chosen round-robin for shifts).
ComplexVector sample_region(const OrbitEngine& engine, std::uint64_t seed, std::uint64_t stream);

CheckResult check_round_trip(const LoadedMap& m, const RunConfig& cfg);
CheckResult check_invariance(const LoadedMap& m, const RunConfig& cfg, std::size_t samples);
// Both shifts at thresholds estimated jointly for the pair.
CheckResult check_invariance_pair(const ShiftLikeMap& S, const ShiftLikeMap& T, const RunConfig& cfg,
                                  std::size_t samples);
CheckResult check_green_identity(const LoadedMap& m, const RunConfig& cfg);
CheckResult check_green_rate(const LoadedMap& m, const RunConfig& cfg);
CheckResult check_growth_brackets(const LoadedMap& m, const RunConfig& cfg);
CheckResult check_growth_bounds(const LoadedMap& m, const RunConfig& cfg);
CheckResult check_boettcher(const LoadedMap& m, const RunConfig& cfg);
CheckResult check_crosscheck(const LoadedMap& m, const RunConfig& cfg);
CheckResult check_projective(const LoadedMap& m, const RunConfig& cfg);
CheckResult check_iterate_commutation(const LoadedMap& m);
CheckResult check_relations(const LoadedMap& m);

nlohmann::json relation_json(const CoefficientRelationReport& r);

struct SuiteReport {
  std::vector<CheckResult> checks;
  bool pass() const;
  nlohmann::json to_json() const;
};

SuiteReport run_verification_suite(const std::vector<LoadedMap>& maps, const RunConfig& cfg);

}  // namespace polyauto

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyauto/maps.hpp"

namespace polyauto {

enum class RegionTag { VR, VRi, VRplus, VRminus, Sector, Unclassified };
const char* to_string(RegionTag t);

struct Region {
  RegionTag tag = RegionTag::Unclassified;
  int index = -1;  // 0-based coordinate for VRi / Sector
  double R = 0.0;
  double eps = 0.0;
  CCase c_case = CCase::Neutral;
};

Region classify_shift(const ComplexVector& z, double R);
// |z_i| > max(max_{j != i} |z_j| + eps, R); i is 0-based.
bool in_sector(const ComplexVector& z, int i, double R, double eps);
// Same test on log-moduli, usable after the orbit has left double range.
bool in_sector_log(const std::vector<double>& logs, int i, double logR, double eps);

// Coupled: |lambda|^{dtilde+1} < |dominant|.  Bounded: |lambda| < 1.  Free: no lambda condition (circle base).
enum class LambdaMode { Coupled, Bounded, Free };
const char* to_string(LambdaMode m);

struct SkewFiltration {
  double R = 0.0;
  int dtilde = 0;
  LambdaMode plus = LambdaMode::Coupled;
  LambdaMode minus = LambdaMode::Bounded;
};

SkewFiltration skew_filtration(const SkewHenonMap& H, double R);
SkewFiltration fibered_filtration(double R);

// dir Forward tests V_R^+, Inverse tests V_R^-; P = (lambda, x, y).
bool in_skew_region(const ComplexVector& P, const SkewFiltration& f, Direction dir);
bool in_skew_region_log(double log_lambda, double log_x, double log_y, const SkewFiltration& f, Direction dir);
Region classify_skew(const ComplexVector& P, double R, const SkewHenonMap& H);

struct ShiftThresholds {
  double R0 = 0.0;
  double eps0 = 0.0;
  double eps = 0.0;      // bracketing margin on the leading coefficient
  double R_eps = 0.0;    // radius past which the bracketing holds
};

ShiftThresholds estimate_thresholds(const ShiftLikeMap& S, const ShiftLikeMap& T);
inline ShiftThresholds estimate_thresholds(const ShiftLikeMap& S) { return estimate_thresholds(S, S); }

struct SkewThresholds {
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  double R0_plus = 0.0;
  double R0_minus = 0.0;
  double R = 0.0;  // max of the two
  SkewFiltration filtration;
};

// delta <= 0 selects min(|lead|, 1) / 2 for each direction.
SkewThresholds estimate_skew_thresholds(const SkewHenonMap& H, double delta = 0.0);
SkewThresholds estimate_fibered_thresholds(const FiberedSkewHenon& F, double delta = 0.0);
// Smallest R >= 2 with the growth bracket |lead| -+ delta holding in the region of direction dir.
double skew_threshold(const PolyMap& symbolic, Direction dir, LambdaMode mode, int dtilde, double lead, double delta,
                      double lambda_factor);

struct InvarianceReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::vector<ComplexVector> witnesses;  // first 10
  double min_slack = 0.0;                // min log-ratio slack of the defining inequalities after mapping
  bool invariant() const { return violations == 0; }
};

// Sector i (0-based) of S under S^nu (Forward) or S^{-(k-nu)} (Inverse).
InvarianceReport check_invariance_shift(const ShiftLikeMap& S, Direction dir, int i, double R, double eps0,
                                        std::size_t samples, std::uint64_t seed, int threads = 1);
InvarianceReport check_invariance_skew(const SkewHenonMap& H, Direction dir, const SkewFiltration& f,
                                       std::size_t samples, std::uint64_t seed, int threads = 1);
InvarianceReport check_invariance_fibered(const FiberedSkewHenon& F, Direction dir, const SkewFiltration& f,
                                          std::size_t samples, std::uint64_t seed, int threads = 1);

// Random point of the region, used by samplers across modules.
ComplexVector sample_sector(int k, int i, double R, double eps, std::uint64_t seed, std::uint64_t stream);
ComplexVector sample_skew_region(const SkewFiltration& f, Direction dir, std::uint64_t seed, std::uint64_t stream);

}  // namespace polyauto

#pragma once

#include <optional>
#include <vector>

#include "polyauto/filtration.hpp"
#include "polyauto/maps.hpp"

namespace polyauto {

struct OrbitClass {
  enum class Tag { Escaping, Bounded, Undetermined };
  Tag tag = Tag::Undetermined;
  int index = 0;  // escape index, or the horizon reached
};
const char* to_string(OrbitClass::Tag t);

struct OrbitOptions {
  double R = 0.0;     // <= 0 selects the map's estimated threshold
  int horizon = 200;  // iterates before an orbit is declared Bounded
  int depth = 0;      // iterates to record in total once escaped
  double eps0 = 0.0;  // shift sector margin, <= 0 selects the estimated one
  double bounded_tol = 1e-9;
};

struct OrbitRecord {
  Direction direction = Direction::Forward;
  std::vector<double> log_norms;               // log sup-norm per iterate
  std::vector<std::vector<double>> coord_logs; // log |coordinate| per iterate
  std::vector<RegionTag> tags;
  std::optional<int> escape_index;
  int target = -1;                  // dominant coordinate once escaped
  std::vector<LogComplex> targets;  // target coordinate at iterates escape.. end
  std::vector<Complex> corrections; // log(1 + rho_n) linking iterate n to n + 1, from the escape on
  std::vector<double> rho;          // largest |rho| over the factors of each corrected step
  int region_violations = 0;        // escaped iterates found outside the region again
  bool nonfinite = false;
  bool log_space = false;
  OrbitClass cls;

  int length() const { return static_cast<int>(log_norms.size()); }
  Complex correction(int n) const { return corrections.at(n - *escape_index); }
};

// Resolved thresholds and bookkeeping for one (map, direction).
class OrbitEngine {
 public:
  OrbitEngine(AnyMap map, Direction dir, OrbitOptions opt = {});

  const AnyMap& map() const { return map_; }
  Direction direction() const { return dir_; }
  const OrbitOptions& options() const { return opt_; }
  double R() const { return opt_.R; }
  double eps0() const { return opt_.eps0; }
  const SkewFiltration& filtration() const { return filt_; }
  int degree() const { return degree_; }
  // Multiplier of the dominant coordinate per iterate.
  Complex lead() const { return lead_; }
  // log of the Green normalization at iterate n.
  double log_normalization(int n) const;
  // Image of one iterate: S^nu / S^{-(k-nu)} for shifts, H^{+-1} otherwise.
  ComplexVector apply_block(const ComplexVector& P) const;

  OrbitRecord trace(const ComplexVector& P) const;
  OrbitRecord trace(const ComplexVector& P, int depth) const;
  RegionTag region_tag(const std::vector<double>& logs, int* index) const;

 private:
  AnyMap map_;
  Direction dir_;
  OrbitOptions opt_;
  SkewFiltration filt_;
  int degree_ = 2;
  Complex lead_ = 1.0;
  double log_dtilde_ratio_ = 0.0;  // log(dtilde / d) for skew maps
};

OrbitClass classify_orbit(const AnyMap& map, const ComplexVector& P, Direction dir, double R, int N);

struct GreenEstimate {
  std::vector<double> values;      // G_0..G_m
  std::vector<double> increments;  // |G_{n+1} - G_n|
  double value = 0.0;
  double extrapolated = 0.0;  // value plus the closed-form leading-coefficient tail
  int depth = 0;
  bool resolved = false;
  OrbitClass cls;
  double fitted_ratio = 0.0;  // exp(slope) of log increments after the escape
  double fitted_C = 0.0;      // max increment * normalization
};

// With tol > 0 the estimate stops after two consecutive increments below tol.
GreenEstimate green_from_record(const OrbitEngine& engine, const OrbitRecord& rec, int n_max, double tol);
GreenEstimate green_value(const OrbitEngine& engine, const ComplexVector& P, int n_max, double tol = 0.0);
GreenEstimate green_value(const AnyMap& map, const ComplexVector& P, Direction dir, int n_max, double tol = 0.0,
                          OrbitOptions opt = {});
double green_at(const OrbitEngine& engine, const OrbitRecord& rec, int n);

struct IdentityResidual {
  double residual = 0.0;
  double scale = 1.0;  // max(1, G)
  bool ok(double rel) const { return residual <= rel * scale; }
};

IdentityResidual functional_identity_residual(const OrbitEngine& engine, const ComplexVector& P, int n);
IdentityResidual functional_identity_residual(const AnyMap& map, const ComplexVector& P, Direction dir, int n,
                                              OrbitOptions opt = {});

struct EstimateCheck {
  bool precondition_ok = true;
  std::string precondition_error;
  bool holds = true;
  int checked = 0;
  int first_failure = -1;
  double R0 = 0.0;
};

// Two-sided growth bracket of the dominant coordinate; n < 0 runs to the end of double range.
EstimateCheck verify_est(const AnyMap& map, const ComplexVector& P, Direction dir, double delta, int n, double R);
inline EstimateCheck verify_est_y(const AnyMap& H, const ComplexVector& P, double delta, int n, double R) {
  return verify_est(H, P, Direction::Forward, delta, n, R);
}
inline EstimateCheck verify_est_x(const AnyMap& H, const ComplexVector& P, double delta, int n, double R) {
  return verify_est(H, P, Direction::Inverse, delta, n, R);
}

struct GrowthReport {
  double K = 1.0;
  bool global_holds = true;
  bool bounded_applicable = false;
  bool bounded_holds = true;
  double L = 1.0;         // admissible constant of the bounded-orbit estimate
  double exponent = 1.0;  // 1 + d / d_m
  std::vector<double> log_growth_ratio;  // log||H^{n+1}|| / log||H^n||
  int checked = 0;
};

GrowthReport verify_growth_bounds(const SkewHenonMap& H, const ComplexVector& P, int n, double R);

struct ProjectiveRatios {
  std::vector<double> log_ratio;         // log |x_n / y_n| forward, log |y_n / x_n| backward
  std::vector<double> log_lambda_ratio;  // (dtilde + 1) log |lambda_n| - log |target_n|
  bool strictly_decreasing(double floor_log = -1e300) const;
};

ProjectiveRatios projective_ratio(const AnyMap& map, const ComplexVector& P, Direction dir, int n);

}  // namespace polyauto

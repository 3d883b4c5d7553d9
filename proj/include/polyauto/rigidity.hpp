#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyauto/green.hpp"
#include "polyauto/maps.hpp"
#include "polyauto/multipoly.hpp"
#include "polyauto/slice.hpp"

namespace polyauto {

enum class Verdict { ExactEqual, Mismatch };
const char* to_string(Verdict v);

struct CommutationCertificate {
  Verdict verdict = Verdict::Mismatch;
  std::optional<MonomialWitness> witness;  // lowest differing monomial of B o A against C o A o B
  DiagonalMap C;
  std::vector<bool> unimodular;
  bool second_form_checked = false;
  bool second_form_equal = false;  // B o A == A o B o C
  std::optional<MonomialWitness> second_witness;
  bool exact_equal() const { return verdict == Verdict::ExactEqual; }
  std::string describe() const;
};

// Caches B o A and A o B so many diagonals can be tested against one pair.
class CommutationOracle {
 public:
  CommutationOracle(PolyMap A, PolyMap B);

  const PolyMap& A() const { return A_; }
  const PolyMap& B() const { return B_; }
  const PolyMap& BA() const { return BA_; }
  const PolyMap& AB() const { return AB_; }

  CommutationCertificate check(const DiagonalMap& C, bool second_form = false) const;
  // B o A and C o A o B agree in coordinate i.
  bool coordinate_matches(int i, const ExactComplex& c) const;

 private:
  PolyMap A_, B_, BA_, AB_;
};

CommutationCertificate verify_commutation(const PolyMap& A, const PolyMap& B, const DiagonalMap& C,
                                          bool second_form = false);

struct DiagonalSweep {
  int order = 12;
  std::size_t candidates = 0;
  std::size_t matches = 0;
  std::vector<DiagonalMap> solutions;  // first few
  std::vector<std::vector<bool>> coordinate_hits;  // [coordinate][root index]
};

// Every diagonal with entries exp(2 pi i r / order), r = 0..order-1.
DiagonalSweep sweep_root_diagonals(const CommutationOracle& oracle, int order = 12);

struct DiagonalSolution {
  DiagonalMap C;
  CommutationCertificate certificate;
  std::vector<bool> unimodular;
  bool second_form_equal = false;
};

// Ratio of grlex-leading coefficients of B o A and A o B per coordinate, then exact verification.
std::optional<DiagonalSolution> solve_diagonal(const CommutationOracle& oracle);
std::optional<DiagonalSolution> solve_diagonal(const PolyMap& A, const PolyMap& B);

// First k - nu entries mutually equal and last nu entries mutually equal.
bool has_shift_block_shape(const DiagonalMap& C, int k, int nu);

struct CoefficientRelation {
  std::string name;
  double left = 0.0;
  double right = 0.0;
  bool pass = false;
};

struct CoefficientRelationReport {
  std::vector<CoefficientRelation> relations;
  std::vector<std::string> delta_names;
  std::vector<ExactComplex> deltas;
  std::vector<double> delta_moduli;
  std::vector<bool> delta_unimodular;  // exact when the inputs are exact
  bool pass() const;
};

CoefficientRelationReport check_coefficient_relations(const ShiftLikeMap& S, const ShiftLikeMap& T);
CoefficientRelationReport check_coefficient_relations(const StructureConstants& H, const StructureConstants& F);
inline CoefficientRelationReport check_coefficient_relations(const SkewHenonMap& H, const SkewHenonMap& F) {
  return check_coefficient_relations(structure_constants(H), structure_constants(F));
}

struct GridComparison {
  double sup_discrepancy = 0.0;
  double agreement = 1.0;
  std::size_t pixels = 0;
  std::size_t resolved = 0;
  std::size_t disagreements = 0;
  std::size_t undetermined = 0;  // pixels where either map is Undetermined, left out of the agreement ratio
  int depth_A = 0;
  int depth_B = 0;
  int horizon_A = 0;
  int horizon_B = 0;
  double R = 0.0;
  std::optional<ComplexVector> worst_point;
  std::vector<ComplexVector> witnesses;  // first class disagreements
  std::string alignment;
};

struct GridOptions {
  int depth = 8;       // depth of the higher-degree map
  int horizon = 200;   // horizon of the lower-degree map
  double R = 0.0;      // <= 0 takes the larger of the two thresholds
  int threads = 0;
};

GridComparison compare_green_on_grid(const AnyMap& A, const AnyMap& B, const SliceSpec& slice, Direction dir,
                                     GridOptions opt = {});

}  // namespace polyauto

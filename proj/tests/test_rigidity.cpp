#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "polyauto/rigidity.hpp"

using namespace polyauto;
using testing::param;

TEST_SUITE("rigidity") {

TEST_CASE("a map commutes with itself and its iterate") {
  const SkewHenonMap H = testing::simple_henon();
  const PolyMap A = to_multipoly(H, 1);
  CHECK(verify_commutation(A, A, DiagonalMap::identity(3)).exact_equal());
  const CommutationCertificate c = verify_commutation(A, to_multipoly(H, 2), DiagonalMap::identity(3), true);
  CHECK(c.verdict == Verdict::ExactEqual);
  CHECK(c.second_form_equal);
  CHECK(!c.witness.has_value());
  const auto sol = solve_diagonal(A, to_multipoly(H, 2));
  REQUIRE(sol.has_value());
  CHECK(sol->C.entries() == DiagonalMap::identity(3).entries());
}

TEST_CASE("a wrong diagonal gives a monomial witness") {
  const SkewHenonMap H = testing::simple_henon();
  const PolyMap A = to_multipoly(H, 1);
  const DiagonalMap C({ExactComplex(1), ExactComplex(-1), ExactComplex(1)});
  const CommutationCertificate c = verify_commutation(A, to_multipoly(H, 2), C);
  CHECK(c.verdict == Verdict::Mismatch);
  REQUIRE(c.witness.has_value());
  CHECK(c.witness->left != c.witness->right);
}

TEST_CASE("no root-of-unity diagonal relates w^2 and w^2 + 1") {
  const ShiftLikeMap S = testing::simple_shift(), T(3, 1, 1.0, UniPoly({1, 0, 1}));
  const CommutationOracle o(to_multipoly(S, S.m()), to_multipoly(T, T.m()));
  const DiagonalSweep sw = sweep_root_diagonals(o, 12);
  CHECK(sw.candidates == 1728);
  CHECK(sw.matches == 0);
  CHECK(!solve_diagonal(o).has_value());
}

TEST_CASE("a diagonal twist of a shift is recovered with block shape") {
  const ShiftLikeMap S(3, 1, 1.0, UniPoly({0, 0, 0, 1}));
  const PolyMap A = to_multipoly(S, S.m());
  const ExactComplex i = ExactComplex::i();
  const DiagonalMap C0({i.pow(3), i.pow(9), i});
  const PolyMap B = multipoly_compose(C0.as_polymap(), A);
  const auto sol = solve_diagonal(A, B);
  REQUIRE(sol.has_value());
  CHECK(sol->certificate.exact_equal());
  for (bool u : sol->unimodular) CHECK(u);
  CHECK(has_shift_block_shape(sol->C, 3, 1));
  // the solved diagonal really conjugates: B o A == C o A o B
  CHECK(verify_commutation(A, B, sol->C).exact_equal());
}

TEST_CASE("block shape predicate") {
  const ExactComplex a = ExactComplex::root_of_unity(2), b = ExactComplex::root_of_unity(5);
  CHECK(has_shift_block_shape(DiagonalMap({a, a, b}), 3, 1));
  CHECK(!has_shift_block_shape(DiagonalMap({a, b, b}), 3, 1));
  CHECK(has_shift_block_shape(DiagonalMap({a, b, b}), 3, 2));
}

TEST_CASE("coefficient relations for shifts") {
  const ShiftLikeMap S = testing::simple_shift();
  const CoefficientRelationReport same = check_coefficient_relations(S, S);
  CHECK(same.pass());
  for (const auto& d : same.deltas) CHECK(d.is_one());
  const ShiftLikeMap T4(3, 1, 1.0, UniPoly({0, 0, 4})), T8(3, 1, 1.0, UniPoly({0, 0, 0, 8}));
  const CoefficientRelationReport r = check_coefficient_relations(T4, T8);
  CHECK(!r.pass());
  REQUIRE(!r.relations.empty());
  CHECK(r.relations[0].left == doctest::Approx(std::log(4.0)));
  CHECK(r.relations[0].right == doctest::Approx(std::log(8.0) / 2));
  const ShiftLikeMap U(3, 1, Complex(0, 1), UniPoly({0, 0, Complex(0.6, 0.8)}));
  CHECK(check_coefficient_relations(U, ShiftLikeMap(3, 1, -1.0, UniPoly({5, 0, -1.0}))).pass());
}

TEST_CASE("coefficient relations for skew maps") {
  const SkewHenonMap H = testing::simple_henon();
  CHECK(check_coefficient_relations(H, H).pass());
  CHECK(check_coefficient_relations(H, H.iterate_map(2)).pass());
  StructureConstants bad = structure_constants(H);
  bad.c_H = 2.0;
  CHECK(!check_coefficient_relations(structure_constants(H), bad).pass());
}

TEST_CASE("Green comparison on a grid") {
  const SkewHenonMap H = testing::simple_henon();
  const SliceSpec slice = parse_slice("y.re:-3:3:32,y.im:-3:3:32", 3);
  const GridComparison same = compare_green_on_grid(H, H, slice, Direction::Forward);
  CHECK(same.sup_discrepancy == 0.0);
  CHECK(same.agreement == 1.0);
  const GridComparison iter = compare_green_on_grid(H, H.iterate_map(2), slice, Direction::Forward);
  CHECK(iter.sup_discrepancy <= 1e-6);
  CHECK(iter.agreement >= 0.999);
  const SkewHenonMap other(2.0, {HenonFactor{param({{Complex(-1, 0.3)}, {0}, {1}}), 1.0}});
  const GridComparison diff = compare_green_on_grid(H, other, slice, Direction::Forward);
  CHECK(diff.sup_discrepancy > 1e-3);
  CHECK(diff.agreement < 1.0);
  CHECK(!diff.witnesses.empty());
}

}

#include <doctest.h>

#include "helpers.hpp"
#include "polyauto/errors.hpp"
#include "polyauto/multipoly.hpp"
#include "polyauto/random.hpp"

using namespace polyauto;
using testing::param;

namespace {

bool near(const ComplexVector& a, const ComplexVector& b, double tol = 1e-12) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol * std::max(1.0, std::abs(b[i]))) return false;
  return true;
}

}  // namespace

TEST_SUITE("maps") {

TEST_CASE("shift-like evaluation") {
  const ShiftLikeMap S = testing::simple_shift();
  CHECK(S.apply({1, 2, 3}, Direction::Forward) == ComplexVector{2, 3, 10});
  CHECK(S.apply({2, 3, 10}, Direction::Inverse) == ComplexVector{1, 2, 3});
  const ShiftLikeMap T(3, 2, 2.0, UniPoly({1, 0, 1}));
  CHECK(T.apply({0, 1, 1}, Direction::Forward) == ComplexVector{1, 1, 2});
  CHECK(S.m() == 2);
  CHECK(ShiftLikeMap(5, 2, 1.0, UniPoly({0, 0, 1})).m() == 6);
}

TEST_CASE("shift iterate") {
  const ShiftLikeMap S = testing::simple_shift();
  const ShiftIterate z0 = shift_iterate(S, {1, 2, 3}, 0);
  CHECK(z0.z == ComplexVector{1, 2, 3});
  const ShiftIterate z2 = shift_iterate(S, {1, 2, 3}, 2);
  CHECK(z2.z == ComplexVector{3, 10, 102});
  const ShiftIterate back = shift_iterate(S, z2.z, -2);
  CHECK(near(back.z, {1, 2, 3}));
}

TEST_CASE("shift iterate switches to log space") {
  const ShiftLikeMap S = testing::simple_shift();
  const ShiftIterate it = shift_iterate(S, {0, 0, 10}, 40);
  CHECK(it.log_space);
  CHECK(it.zl[2].finite());
  CHECK(it.zl[2].logmod() > 1e6);
}

TEST_CASE("skew Henon evaluation") {
  const SkewHenonMap H = testing::simple_henon();
  const ComplexVector P1 = H.apply({0, 0, 10}, Direction::Forward);
  CHECK(P1 == ComplexVector{0, 10, 100});
  CHECK(H.apply(P1, Direction::Forward) == ComplexVector{0, 100, 9990});
  CHECK(H.apply(P1, Direction::Inverse) == ComplexVector{0, 0, 10});
  CHECK(H.d() == 2);
  CHECK(H.dtilde() == 2);
  CHECK(H.c_H() == Complex(1.0));
}

TEST_CASE("structure constants of a composition") {
  // factors of degree 2 and 3 with leading coefficients 2 and 1
  const SkewHenonMap H(1.5, {HenonFactor{param({{0, 1}, {0}, {2}}), 0.5}, HenonFactor{param({{0}, {0, -1}, {0}, {1}}), 1.0}});
  const StructureConstants k = structure_constants(H);
  CHECK(k.d == 6);
  CHECK(std::abs(k.c_H - Complex(8.0)) < 1e-15);
  const PolyMap f = H.symbolic(Direction::Forward);
  CHECK(f[2].degree_in(2) == 6);
  CHECK(H.iterate_map(2).d() == 36);
}

TEST_CASE("symbolic form of the shift") {
  const ShiftLikeMap S = testing::simple_shift();
  const PolyMap f = to_multipoly(S, 1);
  const MultiPoly z1 = MultiPoly::variable(3, 0), z2 = MultiPoly::variable(3, 1), z3 = MultiPoly::variable(3, 2);
  CHECK(f[0] == z2);
  CHECK(f[1] == z3);
  CHECK(f[2] == z1 + z3 * z3);
  CHECK(to_multipoly(S, 0) == identity_map(3));
  CHECK_THROWS_AS(to_multipoly(S, 50), DegreeBudgetExceeded);
}

TEST_CASE("symbolic iterates and their inverses compose to the identity") {
  const SkewHenonMap H = testing::simple_henon();
  for (int n = 1; n <= 2; ++n) {
    CHECK(multipoly_compose(to_multipoly(H, n), to_multipoly(H, -n)) == identity_map(3));
    CHECK(multipoly_compose(to_multipoly(H, -n), to_multipoly(H, n)) == identity_map(3));
  }
  const ShiftLikeMap S = testing::simple_shift();
  CHECK(multipoly_compose(to_multipoly(S, 2), to_multipoly(S, -2)) == identity_map(3));
  const FiberedSkewHenon F = testing::simple_fibered();
  const PolyMap Ff = to_multipoly(F, 1);
  CHECK(multipoly_compose(Ff, to_multipoly(F, -1)) == identity_map(3));
}

TEST_CASE("numeric and symbolic maps agree") {
  Rng rng(5, 0);
  const std::vector<AnyMap> maps{testing::simple_shift(), testing::simple_henon(),
                                 SkewHenonMap(Complex(0.3, 0.4), {HenonFactor{param({{1, 2}, {0, 1}, {Complex(0, 1)}}), Complex(2, 1)}})};
  for (const auto& m : maps) {
    const PolyMap f = to_multipoly(m, 1), g = to_multipoly(m, -1);
    for (int t = 0; t < 50; ++t) {
      ComplexVector P(3);
      for (auto& c : P) c = rng.polar(2.0 * rng.uniform());
      CHECK(near(evaluate(f, P), apply(m, P, Direction::Forward), 1e-12));
      CHECK(near(evaluate(g, P), apply(m, P, Direction::Inverse), 1e-12));
    }
  }
}

TEST_CASE("numeric round trip on random points") {
  Rng rng(9, 0);
  const std::vector<AnyMap> maps{testing::simple_shift(), testing::simple_henon(), testing::simple_fibered()};
  for (const auto& m : maps) {
    for (int t = 0; t < 200; ++t) {
      ComplexVector P(3);
      for (auto& c : P) c = rng.polar(3.0 * rng.uniform());
      if (std::holds_alternative<FiberedSkewHenon>(m)) P[0] = FiberedSkewHenon::lambda_of(rng.uniform());
      const ComplexVector Q = apply(m, P, Direction::Forward);
      const ComplexVector back = apply(m, Q, Direction::Inverse);
      double err = 0.0, scale = 1.0;
      for (int i = 0; i < 3; ++i) {
        err = std::max(err, std::abs(back[i] - P[i]));
        scale = std::max({scale, std::abs(P[i]), std::abs(Q[i])});
      }
      CHECK(err <= 1e-12 * scale);
    }
  }
}

TEST_CASE("circle base rotation") {
  const FiberedSkewHenon F = testing::simple_fibered();
  const double t = 0.9;
  CHECK(F.rotate(F.rotate(t, Direction::Forward), Direction::Inverse) == doctest::Approx(t));
  CHECK(FiberedSkewHenon::base_of(FiberedSkewHenon::lambda_of(0.25)) == doctest::Approx(0.25));
}

TEST_CASE("invalid maps are rejected") {
  CHECK_THROWS_AS(ShiftLikeMap(3, 1, 0.0, UniPoly({0, 0, 1})), InputError);
  CHECK_THROWS_AS(ShiftLikeMap(3, 3, 1.0, UniPoly({0, 0, 1})), InputError);
  CHECK_THROWS_AS(ShiftLikeMap(3, 1, 1.0, UniPoly({0, 1})), InputError);
  CHECK_THROWS_AS(SkewHenonMap(1.0, {HenonFactor{param({{0}, {0}, {1}}), 0.0}}), InputError);
  CHECK_THROWS_AS(SkewHenonMap(0.0, {HenonFactor{param({{0}, {0}, {1}}), 1.0}}), InputError);
}

}

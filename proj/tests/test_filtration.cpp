#include <doctest.h>

#include "helpers.hpp"
#include "polyauto/errors.hpp"
#include "polyauto/filtration.hpp"
#include "polyauto/green.hpp"
#include "polyauto/random.hpp"

using namespace polyauto;
using testing::param;

TEST_SUITE("filtration") {

TEST_CASE("shift filtration classification") {
  CHECK(classify_shift({1, 2, 3}, 5).tag == RegionTag::VR);
  const Region r = classify_shift({10, 2, 3}, 5);
  CHECK(r.tag == RegionTag::VRi);
  CHECK(r.index == 0);
  CHECK(classify_shift({10, 10, 3}, 5).tag == RegionTag::Unclassified);
}

TEST_CASE("skew filtration classification with |c| > 1") {
  const SkewHenonMap H = testing::simple_henon();
  CHECK(classify_skew({0.5, 1, 10}, 5, H).tag == RegionTag::VRplus);
  CHECK(classify_skew({0.5, 10, 1}, 5, H).tag == RegionTag::VRminus);
  CHECK(classify_skew({2, 10, 1}, 5, H).tag == RegionTag::Unclassified);
  // lambda^{dtilde+1} has to stay below the dominant coordinate
  CHECK(classify_skew({3, 1, 10}, 5, H).tag == RegionTag::Unclassified);
}

TEST_CASE("skew filtration modes follow |c|") {
  const auto mk = [](Complex c) { return SkewHenonMap(c, {HenonFactor{param({{0}, {0}, {1}}), 1.0}}); };
  const SkewFiltration big = skew_filtration(mk(2.0), 5);
  CHECK(big.plus == LambdaMode::Coupled);
  CHECK(big.minus == LambdaMode::Bounded);
  const SkewFiltration small = skew_filtration(mk(0.5), 5);
  CHECK(small.plus == LambdaMode::Bounded);
  CHECK(small.minus == LambdaMode::Coupled);
  const SkewFiltration unit = skew_filtration(mk(Complex(0, 1)), 5);
  CHECK(unit.plus == LambdaMode::Coupled);
  CHECK(unit.minus == LambdaMode::Coupled);
}

TEST_CASE("sector membership with margin") {
  CHECK(in_sector({0, 0, 10}, 2, 5, 1));
  CHECK(!in_sector({9.5, 0, 10}, 2, 5, 1));
  CHECK(in_sector({9.5, 0, 10}, 2, 5, 0.4));
  CHECK(!in_sector({0, 0, 5}, 2, 5, 0.4));
}

TEST_CASE("log-space sector test matches the direct one") {
  Rng rng(4, 0);
  for (int t = 0; t < 500; ++t) {
    ComplexVector z(3);
    std::vector<double> logs(3);
    for (int i = 0; i < 3; ++i) {
      z[i] = rng.polar(rng.log_uniform(0.1, 100));
      logs[i] = std::log(std::abs(z[i]));
    }
    for (int i = 0; i < 3; ++i) CHECK(in_sector(z, i, 5, 1) == in_sector_log(logs, i, std::log(5.0), 1));
  }
}

TEST_CASE("shift thresholds for p = w^2") {
  const ShiftThresholds t = estimate_thresholds(testing::simple_shift());
  CHECK(t.eps == 0.5);
  CHECK(t.R_eps <= 1.0);
  CHECK(t.R0 * t.R0 > t.eps0);
  CHECK(t.R0 > 1.0);
}

TEST_CASE("skew invariance on a hand example") {
  const SkewHenonMap H = testing::simple_henon();
  const SkewFiltration f = skew_filtration(H, 10);
  const ComplexVector P{0.5, 1, 20};
  REQUIRE(in_skew_region(P, f, Direction::Forward));
  const ComplexVector Q = H.apply(P, Direction::Forward);
  CHECK(Q == ComplexVector{1, 20, 399});
  CHECK(in_skew_region(Q, f, Direction::Forward));
}

TEST_CASE("empty invariance report") {
  const ShiftLikeMap S = testing::simple_shift();
  const InvarianceReport r = check_invariance_shift(S, Direction::Forward, 2, 10, 3, 0, 1);
  CHECK(r.samples == 0);
  CHECK(r.invariant());
}

TEST_CASE("shift sectors are invariant at the estimated thresholds") {
  const ShiftLikeMap S = testing::simple_shift();
  const ShiftThresholds t = estimate_thresholds(S);
  for (double scale : {1.0, 2.0, 10.0}) {
    const double R = scale * t.R0;
    for (Direction d : {Direction::Forward, Direction::Inverse})
      for (int i = S.first_sector(d); i <= S.last_sector(d); ++i) {
        const InvarianceReport r = check_invariance_shift(S, d, i, R, t.eps0, 10000, 17);
        CHECK(r.violations == 0);
        CHECK(r.min_slack > 0.0);
      }
  }
  CHECK_THROWS_AS(check_invariance_shift(S, Direction::Forward, 0, t.R0, t.eps0, 1, 1), InputError);
}

TEST_CASE("skew regions are invariant for all three |c| cases") {
  for (Complex c : {Complex(2.0), Complex(0.5), Complex(0.6, 0.8)}) {
    const SkewHenonMap H(c, {HenonFactor{param({{0, 1}, {0}, {1}}), 1.0}});
    const SkewThresholds t = estimate_skew_thresholds(H);
    for (Direction d : {Direction::Forward, Direction::Inverse}) {
      const InvarianceReport r = check_invariance_skew(H, d, t.filtration, 10000, 23);
      CHECK(r.violations == 0);
    }
  }
}

TEST_CASE("classification is monotone in R") {
  const SkewHenonMap H = testing::simple_henon();
  Rng rng(8, 0);
  for (int t = 0; t < 300; ++t) {
    const ComplexVector P{rng.polar(rng.uniform(0, 3)), rng.polar(rng.log_uniform(0.1, 1e3)), rng.polar(rng.log_uniform(0.1, 1e3))};
    for (double R : {50.0, 10.0}) {
      if (classify_skew(P, R, H).tag == RegionTag::VRplus) CHECK(classify_skew(P, R / 3.0, H).tag == RegionTag::VRplus);
      const Region s = classify_shift(P, R);
      if (s.tag == RegionTag::VRi) CHECK(classify_shift(P, R / 3.0).tag == RegionTag::VRi);
    }
  }
}

TEST_CASE("bounded orbits stay in V_R or the opposite region") {
  const SkewHenonMap H(0.5, {HenonFactor{param({{0}, {0}, {1}}), 1.0}});
  const OrbitEngine e(H, Direction::Forward);
  Rng rng(12, 0);
  int bounded = 0;
  for (int t = 0; t < 400; ++t) {
    const ComplexVector P{rng.polar(0.9), rng.polar(rng.uniform(0, 2)), rng.polar(rng.uniform(0, 2))};
    const OrbitRecord rec = e.trace(P);
    if (rec.cls.tag != OrbitClass::Tag::Bounded) continue;
    ++bounded;
    ComplexVector Q = P;
    for (int n = 0; n < rec.length(); ++n) {
      const RegionTag tag = classify_skew(Q, e.R(), H).tag;
      CHECK((tag == RegionTag::VR || tag == RegionTag::VRminus));
      Q = H.apply(Q, Direction::Forward);
    }
  }
  CHECK(bounded > 0);
}

}

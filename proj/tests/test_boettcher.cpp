#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "polyauto/boettcher.hpp"
#include "polyauto/errors.hpp"
#include "polyauto/filtration.hpp"

using namespace polyauto;
using testing::param;

namespace {

OrbitOptions with_R(double R) {
  OrbitOptions o;
  o.R = R;
  return o;
}

ComplexVector sample(const OrbitEngine& e, std::uint64_t s) {
  if (const auto* S = std::get_if<ShiftLikeMap>(&e.map()))
    return sample_sector(S->k(), S->first_sector(e.direction()) + int(s % (S->last_sector(e.direction()) - S->first_sector(e.direction()) + 1)),
                         e.R(), e.eps0(), 41, s);
  return sample_skew_region(e.filtration(), e.direction(), 41, s);
}

}  // namespace

TEST_SUITE("boettcher") {

TEST_CASE("shift telescoping by hand") {
  const ShiftLikeMap S = testing::simple_shift();
  const BoettcherValue b = boettcher_shift(S, 2, {0, 0, 10}, Direction::Forward, 3);
  // z_{3,n} = 100, 1e4, 1e8 + 10, so phi_3 = (1e8 + 10)^{1/8}
  const long double oracle = std::pow(1e8L + 10.0L, 1.0L / 8.0L);
  const Complex phi = b.value.to_complex();
  CHECK(std::abs(phi.real() - double(oracle)) < 1e-13);
  CHECK(std::abs(phi.imag()) < 1e-15);
  CHECK(phi.real() == doctest::Approx(10.000000125).epsilon(1e-11));
  CHECK(b.branch_ok);
  CHECK(boettcher_shift(S, 2, {0, 0, 10}, Direction::Forward, 2).value.to_complex().real() == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("skew telescoping by hand") {
  const SkewHenonMap H = testing::simple_henon();
  const BoettcherValue b = boettcher_skew(H, {0, 0, 10}, Direction::Forward, 2, with_R(9));
  const double oracle = std::pow(9990.0, 0.25);
  CHECK(std::abs(b.value.to_complex() - Complex(oracle)) < 1e-13);
  CHECK(oracle == doctest::Approx(9.9975).epsilon(1e-6));
}

TEST_CASE("points outside the sector or bounded points are rejected") {
  const ShiftLikeMap S = testing::simple_shift();
  CHECK_THROWS_AS(boettcher_shift(S, 2, {10, 0, 0}, Direction::Forward, 3), SectorViolation);
  CHECK_THROWS_AS(boettcher_skew(testing::simple_henon(), {0, 0, 0}, Direction::Forward, 3, with_R(9)), SectorViolation);
}

TEST_CASE("functional equation on sampled region points") {
  std::vector<AnyMap> maps{testing::simple_shift(), testing::simple_henon(), testing::simple_fibered(),
                           SkewHenonMap(2.0, {HenonFactor{param({{0, 0, 0, 1}, {0}, {1}}), 1.0}}),
                           SkewHenonMap(Complex(0.3, 0.2), {HenonFactor{param({{1}, {0, 1}, {Complex(2, 1)}}), Complex(0, 2)}})};
  for (const auto& m : maps)
    for (Direction d : {Direction::Forward, Direction::Inverse}) {
      const OrbitEngine e(m, d);
      for (std::uint64_t s = 0; s < 100; ++s) {
        const ComplexVector P = sample(e, s);
        const BoettcherValue b = boettcher(e, P, 8);
        CHECK(b.valid());
        CHECK(functional_residual(e, P, 8) <= 1e-8);
      }
    }
}

TEST_CASE("asymptotics along rays") {
  const SkewHenonMap H = testing::simple_henon();
  const OrbitEngine e(H, Direction::Forward);
  double prev = 1.0;
  for (double r : {1e3, 1e4, 1e5, 1e6}) {
    const double err = asymptotic_error(e, {0.5, Complex(0.3, 0.1), std::polar(r, 0.4)}, 8);
    CHECK(err <= prev);
    prev = err;
  }
  CHECK(prev <= 1e-3);
}

TEST_CASE("Green and Boettcher agree at matched depth") {
  const SkewHenonMap H = testing::simple_henon();
  const OrbitEngine e(H, Direction::Forward, with_R(9));
  const Crosscheck c = green_crosscheck(e, {0, 0, 10}, 8);
  REQUIRE(c.discrepancy.size() == 9);
  CHECK(c.discrepancy[2] <= 3e-4);
  CHECK(c.decreasing());
  CHECK(c.at_depth() <= 1e-6);
}

TEST_CASE("crosscheck converges on random points") {
  for (const AnyMap& m : std::vector<AnyMap>{testing::simple_shift(), testing::simple_henon(), testing::simple_fibered()}) {
    const OrbitEngine e(m, Direction::Forward);
    for (std::uint64_t s = 0; s < 100; ++s) {
      const Crosscheck c = green_crosscheck(e, sample(e, s), 8);
      CHECK(c.decreasing());
      CHECK(c.at_depth() <= 1e-6);
    }
  }
}

TEST_CASE("partials converge with bounded truncation") {
  const OrbitEngine e(testing::simple_henon(), Direction::Forward);
  const BoettcherValue b = boettcher(e, {0.2, 1, 60}, 8);
  REQUIRE(b.partials.size() == 9);
  for (size_t n = 2; n < b.partials.size(); ++n)
    CHECK(std::abs(b.partials[n] - b.partials[n - 1]) <= std::abs(b.partials[n - 1] - b.partials[n - 2]) + 1e-15);
  CHECK(b.truncation < 1e-30);
}

}

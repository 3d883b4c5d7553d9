#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "polyauto/errors.hpp"
#include "polyauto/multipoly.hpp"
#include "polyauto/poly.hpp"
#include "polyauto/random.hpp"

using namespace polyauto;
using testing::rel_err;

TEST_SUITE("core") {

TEST_CASE("horner evaluation") {
  CHECK(UniPoly({0, 0, 1})(3.0) == Complex(9.0));
  CHECK(std::abs(UniPoly({1, 0, 1})(Complex(0, 1))) == 0.0);
  CHECK(UniPoly({0, -1, 0, 2})(2.0) == Complex(14.0));
}

TEST_CASE("log-space evaluation") {
  const LogComplex a = poly_log_eval(UniPoly({0, 0, 1}), LogComplex(std::log(10.0), 0.0));
  CHECK(a.logmod() == doctest::Approx(2 * std::log(10.0)).epsilon(1e-15));
  CHECK(a.arg() == 0.0);

  const LogComplex b = poly_log_eval(UniPoly({1, 0, 1}), LogComplex(std::log(1e6), 0.0));
  CHECK(std::abs(b.logmod() - (2 * std::log(1e6) + std::log1p(1e-12))) < 1e-14);

  const LogComplex c = poly_log_eval(UniPoly({0, 0, 1}), LogComplex(std::log(2.0), kPi / 2));
  CHECK(c.logmod() == doctest::Approx(std::log(4.0)));
  CHECK(std::abs(std::abs(c.arg()) - kPi) < 1e-15);
  CHECK(std::abs(c.to_complex() - Complex(-4.0)) < 1e-14);
}

TEST_CASE("log-space evaluation far beyond double range") {
  const UniPoly p({3, -2, 0, 1});
  const LogComplex z(5000.0, 0.7);
  const LogComplex v = poly_log_eval(p, z);
  CHECK(v.finite());
  CHECK(v.logmod() == doctest::Approx(15000.0).epsilon(1e-15));
  CHECK(std::abs(v.arg() - wrap_arg(2.1)) < 1e-12);
}

TEST_CASE("log-space agrees with direct evaluation where both are defined") {
  Rng rng(7, 0);
  const UniPoly p({Complex(1, 2), Complex(-3, 0.5), Complex(0, 0), Complex(2, -1)});
  for (int t = 0; t < 200; ++t) {
    const Complex z = rng.polar(rng.log_uniform(50.0, 1e20));
    const Complex direct = p(z);
    const Complex viaLog = poly_log_eval(p, LogComplex::from(z)).to_complex();
    CHECK(std::abs(direct - viaLog) <= 1e-12 * std::abs(direct));
  }
}

TEST_CASE("dominance is required in log space") {
  CHECK_THROWS_AS(poly_log_eval(UniPoly({1e9, 0, 1}), LogComplex(0.0, 0.0)), DominanceNotReached);
}

TEST_CASE("exact cyclotomic arithmetic") {
  const ExactComplex z = ExactComplex::root_of_unity(1);
  CHECK(z.pow(12).is_one());
  CHECK(!z.pow(6).is_one());
  CHECK(z.pow(6) == ExactComplex(-1));
  CHECK(z.pow(3) == ExactComplex::i());
  CHECK(z.is_unimodular());
  CHECK(!ExactComplex(mpq_class(1, 2), mpq_class(1, 2)).is_unimodular());
  CHECK(ExactComplex(mpq_class(3, 5), mpq_class(4, 5)).is_unimodular());
  CHECK(std::abs(z.to_complex() - std::polar(1.0, kPi / 6)) < 1e-15);
}

TEST_CASE("exact field axioms on random elements") {
  Rng rng(3, 1);
  auto draw = [&] {
    ExactComplex e;
    for (int k = 0; k < 4; ++k) e += ExactComplex(mpq_class(long(rng.uniform(-20, 20)), long(1 + rng.uniform(0, 9)))) * ExactComplex::root_of_unity(k);
    return e;
  };
  for (int t = 0; t < 100; ++t) {
    const ExactComplex a = draw(), b = draw(), c = draw();
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    CHECK(std::abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9 * (1 + std::abs(a.to_complex() * b.to_complex())));
  }
}

TEST_CASE("binary doubles convert exactly") {
  const Complex z(0.1, -1.0 / 3.0);
  const ExactComplex e = ExactComplex::from_complex(z);
  CHECK(e.to_complex() == z);
  CHECK(e.is_gaussian());
}

TEST_CASE("symbolic composition") {
  PolyMap f{MultiPoly::variable(2, 1), MultiPoly::variable(2, 1) * MultiPoly::variable(2, 1) - MultiPoly::variable(2, 0)};
  CHECK(multipoly_compose(f, identity_map(2)) == f);
  const PolyMap ff = multipoly_compose(f, f);
  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  const MultiPoly u = y * y - x;
  CHECK(ff[0] == u);
  CHECK(ff[1] == u * u - y);
  CHECK(total_degree(ff) == 4);
}

TEST_CASE("composition agrees with pointwise evaluation and is associative") {
  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  const PolyMap f{y, y * y.scaled(ExactComplex(2)) - x + MultiPoly::constant(2, ExactComplex::i())};
  const PolyMap g{x + y, x * y};
  const PolyMap h{y, x.scaled(ExactComplex(mpq_class(1, 3)))};
  CHECK(multipoly_compose(multipoly_compose(f, g), h) == multipoly_compose(f, multipoly_compose(g, h)));
  Rng rng(11, 2);
  for (int t = 0; t < 50; ++t) {
    const ComplexVector z{rng.polar(2.0), rng.polar(2.0)};
    const ComplexVector a = evaluate(multipoly_compose(f, g), z);
    const ComplexVector b = evaluate(f, evaluate(g, z));
    for (int i = 0; i < 2; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12 * (1 + std::abs(b[i])));
  }
}

TEST_CASE("first difference reports the lowest differing monomial") {
  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  const PolyMap a{x * x + y}, b{x * x + y.scaled(ExactComplex(2))};
  const auto w = first_difference(a, b);
  REQUIRE(w.has_value());
  CHECK(w->coordinate == 0);
  CHECK(w->exponent == Exponent{0, 1});
  CHECK(!first_difference(a, a).has_value());
}

TEST_CASE("arity mismatch is rejected") {
  const PolyMap f{MultiPoly::variable(2, 0), MultiPoly::variable(2, 1)};
  CHECK_THROWS_AS(multipoly_compose(f, identity_map(3)), ArityMismatch);
}

TEST_CASE("log1p and expm1 keep small arguments") {
  CHECK(std::abs(log1p_complex(Complex(1e-17, 0)) - Complex(1e-17, 0)) < 1e-32);
  CHECK(std::abs(expm1_complex(Complex(0, 1e-17)) - Complex(0, 1e-17)) < 1e-32);
  CHECK(rel_err(std::abs(expm1_complex(log1p_complex(Complex(0.3, -0.2)))), std::abs(Complex(0.3, -0.2))) < 1e-15);
}

}

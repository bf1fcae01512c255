#include <doctest.h>

#include "hardball/rng.hpp"
#include "hardball/scalar.hpp"
#include "support/generators.hpp"

using namespace hardball;

TEST_CASE("rational arithmetic is closed and canonical") {
  Rational a(1, 3), b(1, 6);
  CHECK((a + b).str() == "1/2");
  CHECK((a - b).str() == "1/6");
  CHECK((a * b).str() == "1/18");
  CHECK((a / b).str() == "2");
  CHECK((-a).str() == "-1/3");
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational re-evaluation is bit-identical") {
  // Same pseudorandom op sequence run twice must produce equal values and
  // identical canonical strings.
  auto run = [](std::uint64_t seed) {
    Rng rng(seed);
    Rational acc(1);
    for (int i = 0; i < 300; ++i) {
      Rational operand(rng.uniform_int(-20, 20), rng.uniform_int(1, 20));
      switch (rng.uniform_int(0, 3)) {
        case 0: acc += operand; break;
        case 1: acc -= operand; break;
        case 2: acc *= operand; break;
        default:
          if (operand.sign() != 0) acc /= operand;
      }
    }
    return acc;
  };
  const Rational first = run(99);
  const Rational second = run(99);
  CHECK(first == second);
  CHECK(first.str() == second.str());
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("1/3") == Rational(1, 3));
  CHECK(Rational::parse("-2/6") == Rational(-1, 3));
  CHECK(Rational::parse(" 7 ") == Rational(7));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("1e-2") == Rational(1, 100));
  CHECK(Rational::parse("-12.5e-3") == Rational(-1, 80));
  CHECK(Rational::parse("2.5e3") == Rational(2500));
  CHECK(Rational::parse(".5") == Rational(1, 2));
  CHECK_FALSE(Rational::parse("").has_value());
  CHECK_FALSE(Rational::parse("abc").has_value());
  CHECK_FALSE(Rational::parse("1/0").has_value());
  CHECK_FALSE(Rational::parse("1.2.3").has_value());
  CHECK_FALSE(Rational::parse("1e").has_value());
}

TEST_CASE("exact double conversion is dyadic") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(-0.75) == Rational(-3, 4));
  CHECK(Rational::from_double(3.0) == Rational(3));
}

TEST_CASE("float mode with tau = 0 is raw IEEE comparison") {
  testing::ToleranceGuard guard(0.0);
  CHECK(scalar_eq(1.0, 1.0));
  CHECK_FALSE(scalar_eq(1.0, 1.0 + 1e-15));
  CHECK(scalar_lt(1.0, 1.0 + 1e-15));
  CHECK(scalar_eq(0.0, -0.0));
}

TEST_CASE("float comparisons scale the tolerance") {
  testing::ToleranceGuard guard(1e-9);
  CHECK(scalar_eq(1.0, 1.0 + 1e-10));
  CHECK_FALSE(scalar_eq(1.0, 1.0 + 1e-8));
  // relative behaviour for large magnitudes
  CHECK(scalar_eq(1e6, 1e6 + 1e-4));
  CHECK_FALSE(scalar_eq(1e6, 1e6 + 1e-2));
  CHECK(scalar_sign(5e-10) == 0);
  CHECK(scalar_sign(5e-8) == 1);
  CHECK(scalar_sign(-5e-8) == -1);
  // lt is strict beyond tolerance
  CHECK_FALSE(scalar_lt(1.0, 1.0 + 1e-12));
  CHECK(scalar_lt(1.0, 1.0 + 1e-6));
}

TEST_CASE("tolerance is configurable and validated") {
  testing::ToleranceGuard guard(1e-3);
  CHECK(scalar_eq(1.0, 1.0005));
  CHECK_THROWS_AS(set_float_tolerance(-1.0), std::invalid_argument);
}

TEST_CASE("double repr round-trips") {
  for (double v : {0.0, 1.0, -0.1, 1.0 / 3.0, 1e-300, 123456.789}) {
    const std::string s = scalar_traits<double>::repr(v);
    CHECK(std::stod(s) == v);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torscalc/scalar.hpp"

using namespace torscalc;

namespace {

Scalar half() { return Scalar(Rational(1, 2)); }

// Small random scalars for the ring-axiom properties.
Scalar random_scalar(std::mt19937_64& rng) {
  Scalar out;
  const int terms = static_cast<int>(rng() % 4);
  for (int i = 0; i < terms; ++i) {
    Rational c(static_cast<long long>(rng() % 19) - 9, static_cast<long long>(rng() % 4) + 1);
    ZetaMonomial m;
    const int factors = static_cast<int>(rng() % 3);
    for (int j = 0; j < factors; ++j) m.push_back(3 + 2 * static_cast<int>(rng() % 3));
    out += Scalar::term(c, std::move(m));
  }
  return out;
}

}  // namespace

TEST_CASE("addition examples") {
  Scalar z3 = Scalar::zeta(3);
  CHECK(half() * z3 + half() * z3 == z3);
  Scalar x = Scalar(Rational(7, 3)) + Scalar::zeta(5);
  CHECK(x + Scalar(0) == x);
  CHECK(half() * z3 + -(half() * z3) == Scalar(0));
}

TEST_CASE("multiplication examples") {
  Scalar z3 = Scalar::zeta(3);
  Scalar z5 = Scalar::zeta(5);
  CHECK(Scalar(2) * (half() * z3) == z3);
  CHECK(z3 * z5 == Scalar::term(1, {3, 5}));
  Scalar q(Rational(5, 7));
  Scalar r(Rational(-2, 3));
  CHECK(Scalar(-1) * (q + r * z3) == -q + (-r) * z3);
}

TEST_CASE("exact division") {
  Scalar z3 = Scalar::zeta(3);
  CHECK(z3.div_exact(z3) == Scalar(1));
  Scalar q = (half() * z3).div_exact(z3);
  CHECK(q == half());
  CHECK(q * z3 == half() * z3);
  CHECK_THROWS_AS(Scalar(1).div_exact(z3), NotDivisible);
  CHECK_THROWS_AS(z3.div_exact(Scalar(0)), ZeroDivisor);
  CHECK_THROWS_AS(z3.div_exact(Scalar(1) + z3), NotDivisible);
  // Monomial division strips one factor at a time.
  Scalar z3z5 = Scalar::term(Rational(3, 4), {3, 5});
  CHECK(z3z5.div_exact(Scalar::zeta(5)) == Scalar(Rational(3, 4)) * z3);
}

TEST_CASE("zeta argument validation") {
  CHECK_THROWS_AS(Scalar::zeta(2), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::zeta(1), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::zeta(-3), std::invalid_argument);
}

TEST_CASE("ring axioms on random scalars") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    Scalar a = random_scalar(rng);
    Scalar b = random_scalar(rng);
    Scalar c = random_scalar(rng);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + -a == Scalar(0));
    CHECK(a * Scalar(1) == a);
    CHECK(a * Scalar(0) == Scalar(0));
  }
}

TEST_CASE("division round-trips whenever it succeeds") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Scalar a = random_scalar(rng);
    ZetaMonomial m;
    if (rng() % 2 == 0) m.push_back(3 + 2 * static_cast<int>(rng() % 3));
    Scalar d = Scalar::term(Rational(static_cast<long long>(rng() % 5) + 1, 2), m);
    try {
      Scalar q = a.div_exact(d);
      CHECK(q * d == a);
    } catch (const NotDivisible&) {
    }
  }
}

TEST_CASE("canonical text and parsing") {
  Scalar s = Scalar(Rational(3, 2)) + Scalar(Rational(-1, 2)) * Scalar::zeta(3);
  CHECK(s.str() == "3/2 + -1/2*z3");
  CHECK(Scalar::parse("3/2 + -1/2*z3") == s);
  CHECK(Scalar::parse("3/2 - 1/2*z3") == s);
  CHECK(Scalar(0).str() == "0");
  CHECK(Scalar::parse("0") == Scalar(0));
  CHECK(Scalar::parse("z3^2*z5").str() == "z3^2*z5");
  CHECK(Scalar::parse("-z3") == -Scalar::zeta(3));
  CHECK((-Scalar::zeta(3)).str() == "-z3");
  CHECK_THROWS_AS(Scalar::parse("3//2"), ScalarParseError);
  CHECK_THROWS_AS(Scalar::parse("z4"), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse("1 + "), ScalarParseError);
}

TEST_CASE("text round-trip on random scalars") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    Scalar a = random_scalar(rng);
    CHECK(Scalar::parse(a.str()) == a);
  }
}

TEST_CASE("factorials") {
  CHECK(factorial(0) == Scalar(1));
  CHECK(factorial(2) == Scalar(2));
  CHECK(factorial(6) == Scalar(720));
  CHECK(parity_sign(0) == 1);
  CHECK(parity_sign(-3) == -1);
  CHECK(parity_sign(4) == 1);
}

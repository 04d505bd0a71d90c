#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torscalc/torsion.hpp"
#include "torscalc/verify.hpp"

using namespace torscalc;

namespace {

GradedClass xpow(int exponent, Scalar coefficient) {
  return GradedClass::term({{"x", exponent}}, std::move(coefficient));
}

Scalar half_zeta(int argument) { return Scalar(Rational(1, 2)) * Scalar::zeta(argument); }

VirtualBundle lambda() { return VirtualBundle::line("x"); }

BundleRef sphere_of_line(int n) {
  return BundlePair::make_sphere(lambda() + VirtualBundle::trivial(n - 1), n);
}

}  // namespace

TEST_CASE("theory constructors") {
  TorsionTheory fr1 = fr_theory(1);
  CHECK(fr1.s1 == half_zeta(3));
  CHECK(fr1.s2 == -half_zeta(3));
  TorsionTheory fr2 = fr_theory(2);
  CHECK(fr2.s1 == -half_zeta(5));
  CHECK(fr2.s2 == half_zeta(5));
  TorsionTheory m1 = mmm_theory(1);
  CHECK(m1.s1 == Scalar(0));
  CHECK(m1.s2 == Scalar(2));
  CHECK(mmm_theory(2).s2 == Scalar(24));
  CHECK_THROWS_AS(fr_theory(0), std::invalid_argument);
}

TEST_CASE("circle bundle value for the FR theory") {
  GradedClass value = tau(fr_theory(1), *sphere_of_line(1));
  CHECK(value == xpow(2, half_zeta(3)));
  CHECK(value.str() == "1/2*z3*x^2");
}

TEST_CASE("sphere bundle values match the parity formula") {
  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 6; ++n) {
      GradedClass value = tau(fr_theory(k), *sphere_of_line(n));
      Scalar expected = Scalar(parity_sign(k + n)) * Scalar::zeta(2 * k + 1) *
                        Scalar(1).div_exact(factorial(2 * k));
      CHECK(value == xpow(2 * k, expected));
    }
  }
}

TEST_CASE("miller-morita-mumford sphere values") {
  CHECK(tau(mmm_theory(1), *sphere_of_line(2)) == xpow(2, Scalar(2)));
  CHECK(tau(mmm_theory(1), *sphere_of_line(2)).str() == "2*x^2");
  for (int k = 1; k <= 3; ++k) {
    for (int n = 2; n <= 6; n += 2) {
      CHECK(tau(mmm_theory(k), *sphere_of_line(n)) == xpow(2 * k, Scalar(2)));
    }
    for (int n = 1; n <= 5; n += 2) {
      CHECK(tau(mmm_theory(k), *sphere_of_line(n)).is_zero());
    }
  }
}

TEST_CASE("trivial bundles have zero torsion") {
  auto closed = BundlePair::make_trivial({3, 0, 0, 0, 0});
  auto pair = BundlePair::make_trivial({2, 1, 1, 1, 2});
  ExprGen gen(3, 1, {"x"});
  for (int i = 0; i < 5; ++i) {
    TorsionTheory t = gen.random_theory(1);
    CHECK(tau(t, *closed).is_zero());
    CHECK(tau(t, *pair).is_zero());
  }
}

TEST_CASE("disk and relative disk values") {
  TorsionTheory t = custom_theory(1, Scalar::parse("1/3"), Scalar::parse("2 + z3"));
  VirtualBundle xi = lambda() + VirtualBundle::trivial(1);
  GradedClass ch = ch4k(xi, 1);
  CHECK(tau(t, *BundlePair::make_disk(xi)) == ch.scaled(t.s1 + t.s2));
  // (D^3, S^2): s_3 - s_2; (D^4, S^3): s_4 - s_3.
  VirtualBundle xi3 = lambda() + VirtualBundle::trivial(1);
  CHECK(tau(t, *BundlePair::make_rel_disk(xi3)) == ch4k(xi3, 1).scaled(t.s1 - t.s2));
  VirtualBundle xi4 = lambda() + VirtualBundle::trivial(2);
  CHECK(tau(t, *BundlePair::make_rel_disk(xi4)) == ch4k(xi4, 1).scaled(t.s2 - t.s1));
  // FR torsion vanishes on linear disk bundles (s1 + s2 = 0).
  CHECK(tau(fr_theory(2), *BundlePair::make_disk(xi)).is_zero());
}

TEST_CASE("hatcher bundles against the closed form") {
  ExprGen gen(11, 2, {"x", "y"});
  for (int i = 0; i < 20; ++i) {
    TorsionTheory t = gen.random_theory(1);
    for (int n = 2; n <= 6; ++n) {
      VirtualBundle xi = gen.bundle(n);
      auto e = BundlePair::make_hatcher(xi, n, n + 3);
      GradedClass expected =
          ch4k(xi, 1).scaled(Scalar(2 * parity_sign(n + 1)) * t.s1);
      CHECK(tau(t, *e) == expected);
    }
  }
  // s1 = 0 kills Hatcher bundles.
  auto e = BundlePair::make_hatcher(VirtualBundle::line("x"), 2, 6);
  CHECK(tau(mmm_theory(1), *e).is_zero());
}

TEST_CASE("even and odd parts") {
  TorsionTheory fr1 = fr_theory(1);
  auto s2b = sphere_of_line(2);
  auto s1b = sphere_of_line(1);
  CHECK(tau_even(fr1, *s2b) == xpow(2, -half_zeta(3)));
  CHECK(tau_odd(fr1, *s2b).is_zero());
  CHECK(tau_odd(fr1, *s1b) == xpow(2, half_zeta(3)));
  CHECK(tau_even(fr1, *s1b).is_zero());

  ExprGen gen(19, 3, {"x", "y"});
  for (int i = 0; i < 100; ++i) {
    BundleRef e = gen.expression();
    TorsionTheory t = gen.random_theory(1);
    CHECK(tau_even(t, *e) + tau_odd(t, *e) == tau(t, *e));
  }
}

TEST_CASE("parity vanishing on closed fibers") {
  ExprGen gen(23, 3, {"x", "y"});
  for (int i = 0; i < 150; ++i) {
    BundleRef e = gen.closed_expression(3);
    TorsionTheory t = gen.random_theory(1);
    if (e->stats().dim % 2 == 0) {
      CHECK(tau_odd(t, *e).is_zero());
    } else {
      CHECK(tau_even(t, *e).is_zero());
    }
  }
}

TEST_CASE("decompose recovers the basis coordinates") {
  Decomposition fr_coords = decompose(fr_theory(1));
  CHECK(fr_coords.a == Scalar(1));
  CHECK(fr_coords.b == Scalar(0));
  Decomposition fr2_coords = decompose(fr_theory(2));
  CHECK(fr2_coords.a == Scalar(1));
  CHECK(fr2_coords.b == Scalar(0));
  Decomposition mmm_coords = decompose(mmm_theory(1));
  CHECK(mmm_coords.a == Scalar(0));
  CHECK(mmm_coords.b == Scalar(1));

  TorsionTheory t = custom_theory(1, Scalar::zeta(3), Scalar(2) - Scalar::zeta(3));
  Decomposition d = decompose(t);
  CHECK(d.a == Scalar(2));
  CHECK(d.b == Scalar(1));
  ExprGen gen(29, 3, {"x", "y"});
  for (int i = 0; i < 50; ++i) {
    BundleRef e = gen.expression();
    GradedClass combo = tau(fr_theory(1), *e).scaled(d.a) + tau(mmm_theory(1), *e).scaled(d.b);
    CHECK(tau(t, *e) == combo);
  }

  CHECK_THROWS_AS(decompose(custom_theory(1, Scalar::zeta(5), Scalar(0))), NotDecomposable);
  CHECK_THROWS_AS(decompose(custom_theory(1, Scalar(1), Scalar(0))), NotDecomposable);
}

TEST_CASE("difference torsion vanishes") {
  TorsionTheory t = custom_theory(1, Scalar::parse("1/2*z3"), Scalar::parse("-1/2*z3"));
  VirtualBundle xi = lambda() + VirtualBundle::trivial(2);
  CHECK(difference_torsion(t, *BundlePair::make_disk(xi)).is_zero());
  CHECK(difference_torsion(t, *BundlePair::make_sphere(xi + VirtualBundle::trivial(1), 4))
            .is_zero());
  ExprGen gen(31, 4, {"x", "y"});
  for (int i = 0; i < 100; ++i) {
    CHECK(difference_torsion(gen.random_theory(1), *gen.expression()).is_zero());
  }
}

TEST_CASE("additivity of the vertical union") {
  TorsionTheory t = custom_theory(1, Scalar::parse("2"), Scalar::parse("z3"));
  VirtualBundle xi = lambda() + VirtualBundle::trivial(1);
  auto d = BundlePair::make_disk(xi);
  auto uv = BundlePair::make_union_vertical(d, d);
  GradedClass lhs = tau(t, *uv);
  GradedClass rhs = tau(t, *BundlePair::make_double(d));
  CHECK(lhs == rhs);
  // Distinct presentations of the same boundary.
  auto split = BundlePair::make_fiber_product(BundlePair::make_disk(lambda()),
                                              BundlePair::make_disk(VirtualBundle::trivial(1)));
  auto mixed = BundlePair::make_union_vertical(d, split);
  GradedClass doubled =
      (tau(t, *BundlePair::make_double(d)) + tau(t, *BundlePair::make_double(split)))
          .scaled(Scalar(Rational(1, 2)));
  CHECK(tau(t, *mixed) == doubled);
}

TEST_CASE("stability and products") {
  TorsionTheory t = custom_theory(2, Scalar::parse("1/2*z5"), Scalar::parse("3"));
  ExprGen gen(37, 3, {"x", "y"});
  for (int i = 0; i < 50; ++i) {
    BundleRef e = gen.expression();
    auto stabilized = BundlePair::make_fiber_product(
        e, BundlePair::make_disk(VirtualBundle::trivial(2)));
    CHECK(tau(t, *stabilized) == tau(t, *e));
  }
}

TEST_CASE("boundary recursions reassemble sphere bundles") {
  // d0((D(xi), S(xi)) x (D(eta), S(eta))) and dv(D(xi) x D(eta)) are both the
  // boundary sphere of the product disk, S(xi + eta).
  TorsionTheory t = custom_theory(1, Scalar::parse("1/3 + z3"), Scalar::parse("-2"));
  VirtualBundle xi = VirtualBundle::line("x");
  VirtualBundle eta = VirtualBundle::line("y") + VirtualBundle::trivial(1);
  const int total = xi.real_rank() + eta.real_rank();
  GradedClass sphere_value = tau(t, *BundlePair::make_sphere(xi + eta, total - 1));

  auto rel_product = BundlePair::make_fiber_product(BundlePair::make_rel_disk(xi),
                                                    BundlePair::make_rel_disk(eta));
  CHECK(tau_d0(t, *rel_product) == sphere_value);
  CHECK(tau_vertical_boundary(t, *rel_product) == sphere_value);

  auto disk_product = BundlePair::make_fiber_product(BundlePair::make_disk(xi),
                                                     BundlePair::make_disk(eta));
  CHECK(tau_vertical_boundary(t, *disk_product) == sphere_value);
  CHECK(tau_d0(t, *disk_product).is_zero());
}

TEST_CASE("unsupported boundaries are reported, not guessed") {
  auto morse = BundlePair::make_morse(BundlePair::make_trivial({1, 0, 0, 0, 0}),
                                      {{1, VirtualBundle::trivial(1), VirtualBundle::trivial(1)}});
  CHECK_THROWS_AS(tau(fr_theory(1), *BundlePair::make_double(morse)), UnsupportedNode);
  CHECK_THROWS_AS(tau(fr_theory(1), *BundlePair::make_vertical_boundary(
                                        BundlePair::make_hatcher(VirtualBundle::trivial(2), 2, 5))),
                  UnsupportedNode);
  CHECK_THROWS_AS(
      tau_vertical_boundary(fr_theory(1), *BundlePair::make_union_handle(morse, morse)),
      UnsupportedNode);
}

TEST_CASE("validation failures surface as malformed expressions") {
  auto bad = BundlePair::make_sphere(VirtualBundle::trivial(3), 3);
  CHECK_THROWS_AS(tau(fr_theory(1), *bad), MalformedExpression);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torscalc/transfer.hpp"
#include "torscalc/torsion.hpp"
#include "torscalc/verify.hpp"

using namespace torscalc;

namespace {

GradedClass sample_class(int k) {
  return GradedClass::term({{"x", 2 * k}}, Scalar(Rational(2, 3)));
}

}  // namespace

TEST_CASE("transfer multiplies by the relative Euler characteristic") {
  GradedClass y = sample_class(1);
  auto odd_sphere = BundlePair::make_sphere(VirtualBundle::trivial(4), 3);
  CHECK(transfer_pullback(*odd_sphere, y).is_zero());
  auto even_sphere = BundlePair::make_sphere(VirtualBundle::line("x") + VirtualBundle::trivial(1), 2);
  CHECK(transfer_pullback(*even_sphere, y) == y.scaled(Scalar(2)));
  for (int i = 1; i <= 4; ++i) {
    auto rd = BundlePair::make_rel_disk(VirtualBundle::trivial(i));
    CHECK(transfer_pullback(*rd, y) == y.scaled(Scalar(parity_sign(i))));
  }
}

TEST_CASE("transfer is scalar linear") {
  GradedClass y = sample_class(1);
  GradedClass z = GradedClass::term({{"y", 2}}, Scalar::zeta(3));
  auto e = BundlePair::make_disk(VirtualBundle::trivial(3));
  CHECK(transfer_pullback(*e, y + z) ==
        transfer_pullback(*e, y) + transfer_pullback(*e, z));
  CHECK(transfer_pullback(*e, y.scaled(Scalar::zeta(5))) ==
        transfer_pullback(*e, y).scaled(Scalar::zeta(5)));
}

TEST_CASE("vertical tangent bundles") {
  VirtualBundle eta = VirtualBundle::line("x") + VirtualBundle::trivial(1);
  auto sphere = BundlePair::make_sphere(eta, 2);
  VirtualBundle tv = vertical_tangent(*sphere);
  CHECK(tv.real_rank() == 2);
  CHECK(ch4k(tv, 1) == ch4k(eta, 1));

  auto disks = BundlePair::make_fiber_product(
      BundlePair::make_disk(VirtualBundle::line("x")),
      BundlePair::make_disk(VirtualBundle::line("y")));
  VirtualBundle tv2 = vertical_tangent(*disks);
  CHECK(tv2 == VirtualBundle::line("x") + VirtualBundle::line("y"));

  CHECK(ch4k(vertical_tangent(*BundlePair::make_disk(VirtualBundle::trivial(3))), 1).is_zero());
  CHECK_THROWS_AS(
      vertical_tangent(*BundlePair::make_double(BundlePair::make_disk(VirtualBundle::trivial(2)))),
      UnsupportedNode);
}

TEST_CASE("miller-morita-mumford classes of spheres and disks") {
  VirtualBundle xi = VirtualBundle::line("x") + VirtualBundle::trivial(2);
  for (int k = 1; k <= 2; ++k) {
    GradedClass ch = ch4k(xi, k);
    // S^{2n}(xi): twice (2k)! ch4k; odd spheres vanish.
    auto s4 = BundlePair::make_sphere(xi + VirtualBundle::trivial(1), 4);
    CHECK(m2k_direct(*s4, k) == ch.scaled(Scalar(2) * factorial(2 * k)));
    auto s3 = BundlePair::make_sphere(xi, 3);
    CHECK(m2k_direct(*s3, k).is_zero());
    // D^m(xi): (2k)! ch4k.
    auto d = BundlePair::make_disk(xi);
    CHECK(m2k_direct(*d, k) == ch.scaled(factorial(2 * k)));
  }
}

TEST_CASE("relative transfer identities hold on generated expressions") {
  ExprGen gen(51, 4, {"x", "y"});
  GradedClass y = sample_class(1);
  for (int i = 0; i < 300; ++i) {
    BundleRef e = gen.expression();
    TransferIdentities ids = relative_transfer_identities(*e, y);
    CHECK(ids.relative == ids.total_minus_d0);
    CHECK(ids.dual == ids.dual_expected);
  }
}

TEST_CASE("transfer additivity over vertical unions") {
  ExprGen gen(52, 3, {"x", "y"});
  GradedClass y = sample_class(2);
  for (int i = 0; i < 200; ++i) {
    auto family = gen.matched_family(2, 2);
    auto uv = BundlePair::make_union_vertical(family[0], family[1]);
    GradedClass rhs = transfer_absolute(*family[0], y) + transfer_absolute(*family[1], y) -
                      y.scaled(Scalar(family[0]->stats().chi_boundary()));
    CHECK(transfer_absolute(*uv, y) == rhs);
  }
}

TEST_CASE("direct computation matches the torsion evaluator") {
  ExprGen gen(53, 4, {"x", "y"});
  for (int i = 0; i < 300; ++i) {
    BundleRef e = gen.expression();
    for (int k = 1; k <= 2; ++k) {
      CHECK(m2k_direct(*e, k) == tau(mmm_theory(k), *e));
    }
  }
}

TEST_CASE("transfer axiom in the pullback configuration") {
  ExprGen gen(54, 3, {"x", "y"});
  for (int i = 0; i < 200; ++i) {
    BundleRef e = gen.expression(2);
    const int m = gen.range(1, 4);
    VirtualBundle xi = gen.bundle(m + 1);
    auto sphere = BundlePair::make_sphere(xi, m);
    TorsionTheory t = gen.random_theory(1);
    GradedClass lhs = tau(t, *BundlePair::make_fiber_product(e, sphere));
    GradedClass rhs = tau(t, *e).scaled(Scalar(1 + parity_sign(m))) +
                      transfer_pullback(*e, tau(t, *sphere));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("hatcher bundles have vanishing mmm classes") {
  ExprGen gen(55, 2, {"x", "y"});
  for (int n = 2; n <= 6; ++n) {
    auto e = BundlePair::make_hatcher(gen.bundle(n), n, n + 2);
    CHECK(m2k_direct(*e, 1).is_zero());
    CHECK(m2k_direct(*e, 2).is_zero());
  }
}

TEST_CASE("mmm boundary recursions reassemble sphere bundles") {
  VirtualBundle xi = VirtualBundle::line("x");
  VirtualBundle eta = VirtualBundle::line("y") + VirtualBundle::trivial(1);
  const int total = xi.real_rank() + eta.real_rank();
  GradedClass sphere_value = m2k_direct(*BundlePair::make_sphere(xi + eta, total - 1), 1);

  auto rel_product = BundlePair::make_fiber_product(BundlePair::make_rel_disk(xi),
                                                    BundlePair::make_rel_disk(eta));
  CHECK(m2k_d0(*rel_product, 1) == sphere_value);
  auto disk_product = BundlePair::make_fiber_product(BundlePair::make_disk(xi),
                                                     BundlePair::make_disk(eta));
  CHECK(m2k_vertical_boundary(*disk_product, 1) == sphere_value);
}

TEST_CASE("m2k input validation") {
  auto e = BundlePair::make_disk(VirtualBundle::trivial(2));
  CHECK_THROWS_AS(m2k_direct(*e, 0), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torscalc/bundle.hpp"
#include "torscalc/verify.hpp"

using namespace torscalc;

namespace {

VirtualBundle rank(int n) { return VirtualBundle::trivial(n); }

bool stats_honest(const FiberStats& s) {
  if (s.dim % 2 == 0) {
    return s.chi0 == s.chi1 && s.corner == 2 * s.chi0;
  }
  return s.corner == 0 && s.chi0 + s.chi1 == 2 * s.chi;
}

}  // namespace

TEST_CASE("sphere and disk statistics") {
  auto s2 = BundlePair::make_sphere(VirtualBundle::line("x") + rank(1), 2);
  CHECK(s2->stats().dim == 2);
  CHECK(s2->stats().chi == 2);
  CHECK(s2->stats().chi_rel() == 2);
  auto s3 = BundlePair::make_sphere(rank(4), 3);
  CHECK(s3->stats().chi == 0);

  auto d3 = BundlePair::make_disk(rank(3));
  CHECK(d3->stats().chi == 1);
  CHECK(d3->stats().chi0 == 0);
  CHECK(d3->stats().chi1 == 2);  // boundary S^2
  auto rd3 = BundlePair::make_rel_disk(rank(3));
  CHECK(rd3->stats().chi0 == 2);
  CHECK(rd3->stats().chi_rel() == -1);
  auto rd4 = BundlePair::make_rel_disk(rank(4));
  CHECK(rd4->stats().chi_rel() == 1);
}

TEST_CASE("morse statistics over an empty base give spheres") {
  // Two critical points of index 0 and n build S^n.
  for (int n = 1; n <= 5; ++n) {
    auto base = BundlePair::make_trivial({n - 1, 0, 0, 0, 0});
    auto e = BundlePair::make_morse(
        base, {{0, VirtualBundle(), rank(n)}, {n, rank(n), VirtualBundle()}});
    CHECK(validate(*e).empty());
    CHECK(e->stats().chi == 1 + parity_sign(n));
    CHECK(e->stats().chi0 == 0);
  }
}

TEST_CASE("hatcher statistics cancel") {
  auto e = BundlePair::make_hatcher(rank(4), 4, 9);
  CHECK(validate(*e).empty());
  CHECK(e->stats().chi == 1);
  CHECK(e->stats().chi0 == 1);
  CHECK(e->stats().chi_rel() == 0);
  auto handles = e->hatcher_handles();
  REQUIRE(handles.size() == 2);
  CHECK(handles[0].index == 3);
  CHECK(handles[0].negative.is_zero() == false);  // trivial of rank 3, not the zero bundle
  CHECK(handles[0].negative.real_rank() == 3);
  CHECK(handles[0].negative.roots().empty());
  CHECK(handles[1].index == 4);
  CHECK(handles[1].positive.real_rank() == 5);
}

TEST_CASE("double and union bookkeeping") {
  auto d = BundlePair::make_disk(rank(2));
  auto dd = BundlePair::make_double(d);
  CHECK(dd->stats().dim == 2);
  CHECK(dd->stats().chi == 2 * 1 - 0);  // chi(S^2) via 2 chi(D^2) - chi(S^1)
  auto db = BundlePair::make_vertical_boundary(d);
  CHECK(db->stats().dim == 1);
  CHECK(db->stats().chi == 0);

  auto uv = BundlePair::make_union_vertical(d, d);
  CHECK(uv->stats().chi == 2);
  CHECK(validate(*uv).empty());
}

TEST_CASE("union glue bookkeeping matches the sphere") {
  VirtualBundle xi = VirtualBundle::line("x") + rank(1);
  auto glued = BundlePair::make_union_handle(BundlePair::make_disk(xi),
                                             BundlePair::make_rel_disk(xi));
  auto sphere = BundlePair::make_sphere(xi + rank(1), 3);
  CHECK(glued->stats().dim == 3);
  CHECK(glued->stats().chi == sphere->stats().chi);
  CHECK(glued->stats().chi0 == 0);
}

TEST_CASE("fiber product strata") {
  auto d1 = BundlePair::make_disk(rank(1));
  auto rd1 = BundlePair::make_rel_disk(rank(1));
  auto square = BundlePair::make_fiber_product(d1, rd1);
  CHECK(square->stats().dim == 2);
  CHECK(square->stats().chi == 1);
  CHECK(square->stats().chi0 == 2);
  CHECK(square->stats().chi1 == 2);
  CHECK(square->stats().corner == 4);
  CHECK(square->stats().chi_boundary() == 0);
}

TEST_CASE("validation diagnostics") {
  auto bad_union = BundlePair::make_union_vertical(BundlePair::make_disk(rank(3)),
                                                   BundlePair::make_disk(rank(4)));
  auto diagnostics = validate(*bad_union);
  REQUIRE(!diagnostics.empty());
  CHECK(diagnostics.front().message.find("dimension") != std::string::npos);

  auto bad_morse = BundlePair::make_morse(BundlePair::make_trivial({3, 1, 2, 0, 0}),
                                          {{2, rank(3), rank(1)}});
  CHECK(!validate(*bad_morse).empty());

  auto bad_sphere = BundlePair::make_sphere(rank(3), 3);
  CHECK(!validate(*bad_sphere).empty());
  CHECK_THROWS_AS(ensure_valid(*bad_sphere), MalformedExpression);

  CHECK(validate(*BundlePair::make_hatcher(rank(3), 3, 7)).empty());

  // Index-0 handles must carry the zero bundle.
  auto zero_handle = BundlePair::make_morse(BundlePair::make_trivial({1, 0, 0, 0, 0}),
                                            {{0, VirtualBundle(), rank(2)}});
  CHECK(validate(*zero_handle).empty());
  VirtualBundle fake_zero = VirtualBundle::line("x").complement(0) + VirtualBundle::line("x");
  CHECK(fake_zero.is_zero());  // cancels exactly, so it passes as zero
}

TEST_CASE("trivial stats parity constraints") {
  CHECK(validate(*BundlePair::make_trivial({2, 2, 0, 0, 0})).empty());
  CHECK(!validate(*BundlePair::make_trivial({2, 2, 1, 0, 0})).empty());
  CHECK(!validate(*BundlePair::make_trivial({3, 1, 1, 0, 0})).empty());
  CHECK(validate(*BundlePair::make_trivial({3, 1, 1, 1, 0})).empty());
  CHECK(validate(*BundlePair::make_trivial({2, 1, 1, 1, 2})).empty());
}

TEST_CASE("generated expressions have honest statistics") {
  ExprGen gen(42, 4, {"x", "y"});
  for (int i = 0; i < 300; ++i) {
    BundleRef e = gen.expression();
    CHECK(validate(*e).empty());
    CHECK(stats_honest(e->stats()));
    CHECK(torsion_evaluable(*e));
  }
}

TEST_CASE("closed generated expressions report zero boundary") {
  ExprGen gen(43, 4, {"x", "y"});
  for (int i = 0; i < 200; ++i) {
    BundleRef e = gen.closed_expression(4);
    CHECK(certified_closed(*e));
    CHECK(e->stats().chi0 == 0);
    CHECK(e->stats().chi1 == 0);
    CHECK(e->stats().corner == 0);
    if (e->stats().dim % 2 == 1) CHECK(e->stats().chi == 0);
  }
}

TEST_CASE("double halves its boundary count") {
  ExprGen gen(44, 3, {"x", "y"});
  for (int i = 0; i < 200; ++i) {
    BundleRef e = gen.boundary_piece(2);
    const FiberStats& s = e->stats();
    auto d = BundlePair::make_double(e);
    CHECK(d->stats().chi == 2 * s.chi - s.chi_boundary());
  }
}

TEST_CASE("relative Euler characteristics multiply") {
  ExprGen gen(45, 3, {"x", "y"});
  for (int i = 0; i < 200; ++i) {
    BundleRef a = gen.expression(2);
    BundleRef b = gen.expression(2);
    auto p = BundlePair::make_fiber_product(a, b);
    CHECK(p->stats().chi_rel() == a->stats().chi_rel() * b->stats().chi_rel());
  }
}

TEST_CASE("workspace declarations") {
  Workspace ws;
  ws.declare_root("x");
  CHECK(ws.has_root("x"));
  CHECK_THROWS_AS(ws.declare_root("x"), std::invalid_argument);
  CHECK_THROWS_AS(ws.declare_root("z3"), std::invalid_argument);
  CHECK_THROWS_AS(ws.declare_root("disk"), std::invalid_argument);
  CHECK_THROWS_AS(ws.declare_root("1bad"), std::invalid_argument);
  ws.define_bundle("xi", VirtualBundle::line("x"));
  CHECK(ws.find_bundle("xi") != nullptr);
  CHECK_THROWS_AS(ws.define_bundle("eta", VirtualBundle::line("y")), std::invalid_argument);

  auto e = BundlePair::make_sphere(VirtualBundle::line("y") + VirtualBundle::trivial(1), 2);
  CHECK(!ws.validate_roots(*e).empty());
}

TEST_CASE("expression text replays through the grammar") {
  ExprGen gen(46, 3, {"x", "y"});
  for (int i = 0; i < 50; ++i) {
    BundleRef e = gen.expression();
    std::string text = dsl_expr(*e);
    CHECK(!text.empty());
    CHECK(text.find('?') == std::string::npos);
  }
}

import pytest

import torscalc as tc


def test_sphere_value():
    e = tc.sphere(tc.line("x"), 1)
    assert str(tc.tau(tc.fr(1), e)) == "1/2*z3*x^2"
    assert str(tc.tau(tc.mmm(1), tc.sphere(tc.line("x") + tc.trivial_bundle(1), 2))) == "2*x^2"


def test_scalar_algebra():
    half = tc.Scalar("1/2")
    z3 = tc.Scalar.zeta(3)
    assert half * z3 + half * z3 == z3
    assert str(z3.div_exact(z3)) == "1"
    with pytest.raises(tc.ScalarError):
        tc.Scalar(1).div_exact(z3)


def test_script_round_trip():
    out = tc.run("root x; vb l = line(x); E = sphere(l, n=1); theory F = fr(1); query tau(F, E);")
    assert out == "1/2*z3*x^2\n"
    script = "root x;\nE = disk(line(x) + trivial(2));\nquery chi(E);\n"
    assert tc.reprint(tc.reprint(script)) == tc.reprint(script)


def test_hatcher_vanishes_for_mmm():
    e = tc.hatcher(tc.line("x") + tc.trivial_bundle(2), n=4, total=10)
    assert tc.tau(tc.mmm(1), e).is_zero()
    assert tc.m2k(e, 1).is_zero()
    assert str(tc.tau(tc.fr(1), e)) == "-1/2*z3*x^2"


def test_decompose():
    a, b = tc.decompose(tc.fr(2))
    assert str(a) == "1" and str(b) == "0"
    with pytest.raises(tc.NotDecomposable):
        tc.decompose(tc.custom(1, tc.Scalar.zeta(5), tc.Scalar(0)))


def test_chi_and_validate():
    e = tc.prod(tc.disk(tc.line("x")), tc.reldisk(tc.line("y") + tc.trivial_bundle(1)))
    assert tc.chi(e) == -1
    assert tc.validate(e) == []
    bad = tc.sphere(tc.trivial_bundle(3), 3)
    assert tc.validate(bad) != []


def test_unsupported_boundary():
    e = tc.hatcher(tc.line("x"), n=2, total=5)
    with pytest.raises(tc.UnsupportedNode):
        tc.tau(tc.fr(1), tc.dv(e))


def test_verify_suite():
    reports = tc.verify(seed=3, depth=2, samples=5, k=1, theories=2)
    assert reports
    assert all(r["status"] == "pass" for r in reports)

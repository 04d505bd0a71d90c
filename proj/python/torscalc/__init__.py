"""Exact calculator for higher torsion invariants of smooth bundles."""

from ._core import (  # noqa: F401
    BundlePair,
    FiberStats,
    GradedClass,
    MalformedExpression,
    NotDecomposable,
    Scalar,
    ScalarError,
    TorsionTheory,
    UnsupportedNode,
    VirtualBundle,
    certified_closed,
    ch4k,
    chi,
    custom,
    decompose,
    disk,
    double,
    dv,
    even_part,
    fr,
    glue,
    hatcher,
    line,
    m2k,
    mmm,
    morse,
    odd_part,
    prod,
    reldisk,
    reprint,
    run,
    sphere,
    tau,
    tau_even,
    tau_odd,
    tdelta,
    transfer,
    trivial_bundle,
    trivial_pair,
    union,
    validate,
    verify,
    vertical_tangent,
)

__all__ = [name for name in dir() if not name.startswith("_")]

#include "torscalc/torsion.hpp"

namespace torscalc {

TorsionTheory custom_theory(int k, Scalar s1, Scalar s2) {
  if (k < 1) throw std::invalid_argument("torsion theories need k >= 1");
  return {k, std::move(s1), std::move(s2)};
}

TorsionTheory fr_theory(int k) {
  if (k < 1) throw std::invalid_argument("fr_theory needs k >= 1");
  Scalar half_zeta = Scalar(Rational(1, 2)) * Scalar::zeta(2 * k + 1);
  Scalar s1 = Scalar(parity_sign(k + 1)) * half_zeta;
  Scalar s2 = Scalar(parity_sign(k)) * half_zeta;
  return {k, std::move(s1), std::move(s2)};
}

TorsionTheory mmm_theory(int k) {
  if (k < 1) throw std::invalid_argument("mmm_theory needs k >= 1");
  return {k, Scalar(0), factorial(2 * k)};
}

TorsionTheory even_part(const TorsionTheory& t) { return {t.k, Scalar(0), t.s2}; }

TorsionTheory odd_part(const TorsionTheory& t) { return {t.k, t.s1, Scalar(0)}; }

Scalar sphere_coefficient(const TorsionTheory& t, int n) {
  return n % 2 == 0 ? t.s2 : t.s1;
}

namespace {

// The three recursions below mirror the boundary-case bookkeeping:
//   tau(E)      = tau(E, d0) + tau(d0 E)                (relative formula)
//   tau(DE)     = 2 tau(E) - tau(dv E)                  (definition of the
//                                                        boundary extension)
//   tau(E1 u E2) = tau(E1) + tau(E2) - tau(E1 n E2)     (boundary additivity)
// Fiber products distribute over the boundary strata with Euler
// characteristic weights from the product formula.

GradedClass eval_rel(const TorsionTheory& t, const BundlePair& e);
GradedClass eval_d0(const TorsionTheory& t, const BundlePair& e);
GradedClass eval_dv(const TorsionTheory& t, const BundlePair& e);

GradedClass eval_total(const TorsionTheory& t, const BundlePair& e) {
  return eval_rel(t, e) + eval_d0(t, e);
}

GradedClass zero_class(const TorsionTheory& t) { return GradedClass(4 * t.k); }

GradedClass sphere_value(const TorsionTheory& t, const VirtualBundle& xi, int n) {
  return ch4k(xi, t.k).scaled(Scalar(2) * sphere_coefficient(t, n));
}

GradedClass disk_value(const TorsionTheory& t, const VirtualBundle& xi) {
  return ch4k(xi, t.k).scaled(t.s1 + t.s2);
}

GradedClass morse_sum(const TorsionTheory& t, const std::vector<MorseHandle>& handles) {
  GradedClass out = zero_class(t);
  for (const MorseHandle& h : handles) {
    Scalar sign(parity_sign(h.index));
    out += ch4k(h.positive, t.k).scaled(sign * (t.s1 + t.s2));
    out += ch4k(h.negative, t.k).scaled(sign * (t.s2 - t.s1));
  }
  return out;
}

GradedClass eval_rel(const TorsionTheory& t, const BundlePair& e) {
  switch (e.kind()) {
    case BundleKind::kTrivial:
      return zero_class(t);
    case BundleKind::kSphere:
      return sphere_value(t, e.bundle(), e.sphere_dim());
    case BundleKind::kDisk:
      return disk_value(t, e.bundle());
    case BundleKind::kRelDisk: {
      const int n = e.bundle().real_rank();
      Scalar coeff = sphere_coefficient(t, n) - sphere_coefficient(t, n - 1);
      return ch4k(e.bundle(), t.k).scaled(coeff);
    }
    case BundleKind::kDouble: {
      const BundlePair& c = *e.child();
      return eval_total(t, c) + eval_total(t, c) - eval_dv(t, c);
    }
    case BundleKind::kVerticalBoundary:
      return eval_dv(t, *e.child());
    case BundleKind::kUnionVertical:
      return eval_total(t, *e.left()) + eval_total(t, *e.right()) - eval_dv(t, *e.left());
    case BundleKind::kUnionHandle:
      return eval_rel(t, *e.left()) + eval_rel(t, *e.right());
    case BundleKind::kFiberProduct:
      return eval_rel(t, *e.left()).scaled(Scalar(e.right()->stats().chi_rel())) +
             eval_rel(t, *e.right()).scaled(Scalar(e.left()->stats().chi_rel()));
    case BundleKind::kMorse:
      return morse_sum(t, e.handles());
    case BundleKind::kHatcher:
      return morse_sum(t, e.hatcher_handles());
  }
  throw UnsupportedNode("no torsion rule for this node");
}

GradedClass eval_d0(const TorsionTheory& t, const BundlePair& e) {
  switch (e.kind()) {
    case BundleKind::kTrivial:
    case BundleKind::kSphere:
    case BundleKind::kDisk:
    case BundleKind::kDouble:
    case BundleKind::kVerticalBoundary:
    case BundleKind::kUnionVertical:
    case BundleKind::kHatcher:
      // d0 is empty, closed, or a trivial bundle; torsion zero either way.
      return zero_class(t);
    case BundleKind::kRelDisk:
      return sphere_value(t, e.bundle(), e.bundle().real_rank() - 1);
    case BundleKind::kUnionHandle:
      return eval_d0(t, *e.left());
    case BundleKind::kFiberProduct: {
      // d0(E x E') = d0 E x E' u E x d0 E', glued along d0 E x d0 E'.
      const BundlePair& a = *e.left();
      const BundlePair& b = *e.right();
      const FiberStats& sa = a.stats();
      const FiberStats& sb = b.stats();
      GradedClass out = eval_d0(t, a).scaled(Scalar(sb.chi));
      out += eval_total(t, b).scaled(Scalar(sa.chi0));
      out += eval_total(t, a).scaled(Scalar(sb.chi0));
      out += eval_d0(t, b).scaled(Scalar(sa.chi));
      out -= eval_d0(t, a).scaled(Scalar(sb.chi0));
      out -= eval_d0(t, b).scaled(Scalar(sa.chi0));
      return out;
    }
    case BundleKind::kMorse:
      return eval_total(t, *e.base());
  }
  throw UnsupportedNode("no torsion rule for the d0 boundary of this node");
}

GradedClass eval_dv(const TorsionTheory& t, const BundlePair& e) {
  switch (e.kind()) {
    case BundleKind::kTrivial:
    case BundleKind::kSphere:
    case BundleKind::kDouble:
    case BundleKind::kVerticalBoundary:
    case BundleKind::kUnionVertical:
      // Trivial or empty vertical boundary.
      return zero_class(t);
    case BundleKind::kDisk:
    case BundleKind::kRelDisk: {
      const int n = e.bundle().real_rank();
      if (n < 1) return zero_class(t);  // a point fiber has no boundary
      return sphere_value(t, e.bundle(), n - 1);
    }
    case BundleKind::kFiberProduct: {
      // dv(E x E') = dv E x E' u E x dv E', glued along dv E x dv E'.
      const BundlePair& a = *e.left();
      const BundlePair& b = *e.right();
      const FiberStats& sa = a.stats();
      const FiberStats& sb = b.stats();
      const int bva = sa.chi_boundary();
      const int bvb = sb.chi_boundary();
      GradedClass out = eval_dv(t, a).scaled(Scalar(sb.chi));
      out += eval_total(t, b).scaled(Scalar(bva));
      out += eval_total(t, a).scaled(Scalar(bvb));
      out += eval_dv(t, b).scaled(Scalar(sa.chi));
      out -= eval_dv(t, a).scaled(Scalar(bvb));
      out -= eval_dv(t, b).scaled(Scalar(bva));
      return out;
    }
    case BundleKind::kUnionHandle:
      throw UnsupportedNode("the vertical boundary of a handle union is not expressible");
    case BundleKind::kMorse:
      throw UnsupportedNode("the vertical boundary of a Morse bundle is not expressible");
    case BundleKind::kHatcher:
      throw UnsupportedNode("the vertical boundary of a Hatcher bundle is not expressible");
  }
  throw UnsupportedNode("no torsion rule for the vertical boundary of this node");
}

}  // namespace

GradedClass tau(const TorsionTheory& t, const BundlePair& e) {
  ensure_valid(e);
  return eval_rel(t, e);
}

GradedClass tau_absolute(const TorsionTheory& t, const BundlePair& e) {
  ensure_valid(e);
  return eval_total(t, e);
}

GradedClass tau_d0(const TorsionTheory& t, const BundlePair& e) {
  ensure_valid(e);
  return eval_d0(t, e);
}

GradedClass tau_vertical_boundary(const TorsionTheory& t, const BundlePair& e) {
  ensure_valid(e);
  return eval_dv(t, e);
}

GradedClass tau_even(const TorsionTheory& t, const BundlePair& e) {
  return tau(even_part(t), e);
}

GradedClass tau_odd(const TorsionTheory& t, const BundlePair& e) {
  return tau(odd_part(t), e);
}

Decomposition decompose(const TorsionTheory& t) {
  Scalar numerator = Scalar(parity_sign(t.k + 1)) * Scalar(2) * t.s1;
  Scalar a;
  try {
    a = numerator.div_exact(Scalar::zeta(2 * t.k + 1));
  } catch (const ScalarError& err) {
    throw NotDecomposable("s1 = " + t.s1.str() + " is not a rational multiple of z" +
                          std::to_string(2 * t.k + 1));
  }
  if (!a.is_rational()) {
    throw NotDecomposable("s1 = " + t.s1.str() + " is not a rational multiple of z" +
                          std::to_string(2 * t.k + 1));
  }
  Scalar b = (t.s1 + t.s2).div_exact(factorial(2 * t.k));
  return {std::move(a), std::move(b)};
}

GradedClass difference_torsion(const TorsionTheory& t, const BundlePair& e) {
  Decomposition d = decompose(t);
  GradedClass out = tau(t, e);
  out -= tau(fr_theory(t.k), e).scaled(d.a);
  out -= tau(mmm_theory(t.k), e).scaled(d.b);
  return out;
}

}  // namespace torscalc

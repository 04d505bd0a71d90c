#include "torscalc/transfer.hpp"

namespace torscalc {

GradedClass transfer_pullback(const BundlePair& e, const GradedClass& y) {
  return y.scaled(Scalar(e.stats().chi_rel()));
}

GradedClass transfer_absolute(const BundlePair& e, const GradedClass& y) {
  return y.scaled(Scalar(e.stats().chi));
}

GradedClass transfer_d1(const BundlePair& e, const GradedClass& y) {
  return y.scaled(Scalar(e.stats().chi_rel1()));
}

TransferIdentities relative_transfer_identities(const BundlePair& e, const GradedClass& y) {
  TransferIdentities out{transfer_pullback(e, y), GradedClass(y.degree()), transfer_d1(e, y),
                         GradedClass(y.degree())};
  out.total_minus_d0 = transfer_absolute(e, y) - y.scaled(Scalar(e.stats().chi0));
  out.dual_expected = transfer_pullback(e, y).scaled(Scalar(parity_sign(e.stats().dim)));
  return out;
}

VirtualBundle vertical_tangent(const BundlePair& e) {
  switch (e.kind()) {
    case BundleKind::kTrivial:
      // Pulled back from the fiber; invisible from the base, so it behaves
      // like a trivial bundle of the fiber dimension here.
      return VirtualBundle::trivial(e.stats().dim);
    case BundleKind::kDisk:
    case BundleKind::kRelDisk:
      return e.bundle();
    case BundleKind::kSphere:
      // T^v(S(xi)) + R = q* xi, stably.
      return e.bundle() + VirtualBundle::trivial(-1);
    case BundleKind::kFiberProduct:
      return vertical_tangent(*e.left()) + vertical_tangent(*e.right());
    default:
      throw UnsupportedNode("the vertical tangent bundle of this node is not a pullback");
  }
}

namespace {

bool tangent_representable(const BundlePair& e) {
  switch (e.kind()) {
    case BundleKind::kTrivial:
    case BundleKind::kDisk:
    case BundleKind::kRelDisk:
    case BundleKind::kSphere:
      return true;
    case BundleKind::kFiberProduct:
      return tangent_representable(*e.left()) && tangent_representable(*e.right());
    default:
      return false;
  }
}

GradedClass mmm_rel(const BundlePair& e, int k);
GradedClass mmm_d0(const BundlePair& e, int k);
GradedClass mmm_dv(const BundlePair& e, int k);

GradedClass mmm_total(const BundlePair& e, int k) {
  // Relative formula: M(E, d0) = M(E) - M(d0 E).
  return mmm_rel(e, k) + mmm_d0(e, k);
}

GradedClass critical_set_pushdown(const std::vector<MorseHandle>& handles, int k) {
  GradedClass out(4 * k);
  for (const MorseHandle& h : handles) {
    out += ch4k(h.negative + h.positive, k).scaled(Scalar(parity_sign(h.index)));
  }
  return out.scaled(factorial(2 * k));
}

GradedClass mmm_rel(const BundlePair& e, int k) {
  if (tangent_representable(e)) {
    return transfer_pullback(e, ch4k(vertical_tangent(e), k).scaled(factorial(2 * k)));
  }
  switch (e.kind()) {
    case BundleKind::kMorse:
      return critical_set_pushdown(e.handles(), k);
    case BundleKind::kHatcher:
      return critical_set_pushdown(e.hatcher_handles(), k);
    case BundleKind::kDouble: {
      // Additivity with both pieces equal to the child.
      const BundlePair& c = *e.child();
      return mmm_total(c, k) + mmm_total(c, k) - mmm_dv(c, k);
    }
    case BundleKind::kVerticalBoundary:
      return mmm_dv(*e.child(), k);
    case BundleKind::kUnionVertical:
      return mmm_total(*e.left(), k) + mmm_total(*e.right(), k) - mmm_dv(*e.left(), k);
    case BundleKind::kUnionHandle:
      // Vertical additivity of the transfer over the split critical set.
      return mmm_rel(*e.left(), k) + mmm_rel(*e.right(), k);
    case BundleKind::kFiberProduct:
      // Transfer property with fiber X: M(D)_B = chi(X, d0) M(E, d0) + ...
      return mmm_rel(*e.left(), k).scaled(Scalar(e.right()->stats().chi_rel())) +
             mmm_rel(*e.right(), k).scaled(Scalar(e.left()->stats().chi_rel()));
    default:
      throw UnsupportedNode("no direct Miller-Morita-Mumford rule for this node");
  }
}

GradedClass mmm_d0(const BundlePair& e, int k) {
  switch (e.kind()) {
    case BundleKind::kTrivial:
    case BundleKind::kSphere:
    case BundleKind::kDisk:
    case BundleKind::kDouble:
    case BundleKind::kVerticalBoundary:
    case BundleKind::kUnionVertical:
    case BundleKind::kHatcher:
      return GradedClass(4 * k);
    case BundleKind::kRelDisk: {
      // d0 is the boundary sphere bundle S^{n-1}(xi).
      const int chi = 1 + parity_sign(e.bundle().real_rank() - 1);
      return ch4k(e.bundle(), k).scaled(Scalar(chi) * factorial(2 * k));
    }
    case BundleKind::kUnionHandle:
      return mmm_d0(*e.left(), k);
    case BundleKind::kFiberProduct: {
      const BundlePair& a = *e.left();
      const BundlePair& b = *e.right();
      const FiberStats& sa = a.stats();
      const FiberStats& sb = b.stats();
      GradedClass out = mmm_d0(a, k).scaled(Scalar(sb.chi - sb.chi0));
      out += mmm_d0(b, k).scaled(Scalar(sa.chi - sa.chi0));
      out += mmm_total(a, k).scaled(Scalar(sb.chi0));
      out += mmm_total(b, k).scaled(Scalar(sa.chi0));
      return out;
    }
    case BundleKind::kMorse:
      return mmm_total(*e.base(), k);
  }
  throw UnsupportedNode("no Miller-Morita-Mumford rule for the d0 boundary of this node");
}

GradedClass mmm_dv(const BundlePair& e, int k) {
  switch (e.kind()) {
    case BundleKind::kTrivial:
    case BundleKind::kSphere:
    case BundleKind::kDouble:
    case BundleKind::kVerticalBoundary:
    case BundleKind::kUnionVertical:
      return GradedClass(4 * k);
    case BundleKind::kDisk:
    case BundleKind::kRelDisk: {
      const int n = e.bundle().real_rank();
      if (n < 1) return GradedClass(4 * k);
      // The boundary sphere bundle, via the transfer of its tangent class.
      const int chi = 1 + parity_sign(n - 1);
      return ch4k(e.bundle(), k).scaled(Scalar(chi) * factorial(2 * k));
    }
    case BundleKind::kFiberProduct: {
      const BundlePair& a = *e.left();
      const BundlePair& b = *e.right();
      const FiberStats& sa = a.stats();
      const FiberStats& sb = b.stats();
      const int bva = sa.chi_boundary();
      const int bvb = sb.chi_boundary();
      GradedClass out = mmm_dv(a, k).scaled(Scalar(sb.chi - bvb));
      out += mmm_dv(b, k).scaled(Scalar(sa.chi - bva));
      out += mmm_total(a, k).scaled(Scalar(bvb));
      out += mmm_total(b, k).scaled(Scalar(bva));
      return out;
    }
    default:
      throw UnsupportedNode("the vertical boundary of this node is not expressible");
  }
}

}  // namespace

GradedClass m2k_direct(const BundlePair& e, int k) {
  if (k < 1) throw std::invalid_argument("m2k_direct requires k >= 1");
  ensure_valid(e);
  return mmm_rel(e, k);
}

GradedClass m2k_absolute(const BundlePair& e, int k) {
  if (k < 1) throw std::invalid_argument("m2k_absolute requires k >= 1");
  ensure_valid(e);
  return mmm_total(e, k);
}

GradedClass m2k_d0(const BundlePair& e, int k) {
  if (k < 1) throw std::invalid_argument("m2k_d0 requires k >= 1");
  ensure_valid(e);
  return mmm_d0(e, k);
}

GradedClass m2k_vertical_boundary(const BundlePair& e, int k) {
  if (k < 1) throw std::invalid_argument("m2k_vertical_boundary requires k >= 1");
  ensure_valid(e);
  return mmm_dv(e, k);
}

}  // namespace torscalc

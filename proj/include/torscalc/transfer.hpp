#pragma once

#include "torscalc/bundle.hpp"

namespace torscalc {

/// Relative transfer applied to a class pulled back from the base:
/// multiplication by the relative Euler characteristic chi(F, d0 F).
GradedClass transfer_pullback(const BundlePair& e, const GradedClass& y);

/// Absolute transfer on pullbacks: multiplication by chi(F).
GradedClass transfer_absolute(const BundlePair& e, const GradedClass& y);

/// Transfer of the pair (E, d1 E) on pullbacks: multiplication by chi(F, d1 F).
GradedClass transfer_d1(const BundlePair& e, const GradedClass& y);

/// Both relative-transfer identities evaluated on a pullback class, for test
/// reporting: the relative transfer against the difference of absolute
/// transfers, and the (-1)^n duality between the two boundary choices.
struct TransferIdentities {
  GradedClass relative;         // tr^{(E,d0)} y
  GradedClass total_minus_d0;   // tr^E y - tr^{d0 E} y
  GradedClass dual;             // tr^{(E,d1)} y
  GradedClass dual_expected;    // (-1)^n tr^{(E,d0)} y
};
TransferIdentities relative_transfer_identities(const BundlePair& e, const GradedClass& y);

/// Vertical tangent bundle as a virtual bundle pulled back from the base.
/// Defined for trivial, disk, sphere and relative disk bundles and fiber
/// products of such; throws UnsupportedNode elsewhere.
VirtualBundle vertical_tangent(const BundlePair& e);

/// Direct computation of the Miller-Morita-Mumford class M_{2k}(E, d0):
/// the relative transfer of (2k)! ch4k of the vertical tangent bundle where
/// that bundle is expressible, the critical-set push-down
/// (2k)! sum_i (-1)^{index_i} ch4k(xi_i + eta_i) for Morse data, and the
/// transfer-additivity identities for doubles and unions. Independent of the
/// torsion evaluator; agrees with tau(mmm_theory(k), e) everywhere defined.
GradedClass m2k_direct(const BundlePair& e, int k);

/// M_{2k} of the total space, of the d0 subbundle and of the vertical
/// boundary, through the same identities.
GradedClass m2k_absolute(const BundlePair& e, int k);
GradedClass m2k_d0(const BundlePair& e, int k);
GradedClass m2k_vertical_boundary(const BundlePair& e, int k);

}  // namespace torscalc

#pragma once

#include "torscalc/bundle.hpp"

namespace torscalc {

class NotDecomposable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A torsion theory in degree 4k, determined by its sphere parameters:
/// the value on S^n of a line bundle is 2*s_n*ch4k with s_n = s1 for odd n
/// and s_n = s2 for even n (including n = 0).
struct TorsionTheory {
  int k = 1;
  Scalar s1;
  Scalar s2;

  friend bool operator==(const TorsionTheory&, const TorsionTheory&) = default;
};

TorsionTheory custom_theory(int k, Scalar s1, Scalar s2);

/// Higher Franz-Reidemeister torsion: s_n = (1/2)(-1)^{n+k} z_{2k+1}.
TorsionTheory fr_theory(int k);

/// Higher Miller-Morita-Mumford classes: s1 = 0, s2 = (2k)!.
TorsionTheory mmm_theory(int k);

/// The even part (k, 0, s2) and odd part (k, s1, 0); they sum to the theory
/// and the evaluator is linear in (s1, s2).
TorsionTheory even_part(const TorsionTheory& t);
TorsionTheory odd_part(const TorsionTheory& t);

/// s_n of the theory by parity of n.
Scalar sphere_coefficient(const TorsionTheory& t, int n);

/// Relative torsion tau(E, d0 E) in degree 4k; the absolute torsion when
/// d0 is empty. Validates first; throws UnsupportedNode where a rule would
/// need the torsion of a boundary that is not expressible.
GradedClass tau(const TorsionTheory& t, const BundlePair& e);

/// Torsion of the total space E in the boundary-case sense,
/// tau(E) = tau(E, d0) + tau(d0 E).
GradedClass tau_absolute(const TorsionTheory& t, const BundlePair& e);

/// Torsion of the subbundle d0 E.
GradedClass tau_d0(const TorsionTheory& t, const BundlePair& e);

/// Torsion of the closed bundle dv E.
GradedClass tau_vertical_boundary(const TorsionTheory& t, const BundlePair& e);

/// Evaluations of the even and odd parts of the theory on e. On closed
/// fibers these vanish for odd and even fiber dimension respectively.
GradedClass tau_even(const TorsionTheory& t, const BundlePair& e);
GradedClass tau_odd(const TorsionTheory& t, const BundlePair& e);

/// Coordinates of the theory in the (FR, MMM) basis:
/// a = (-1)^{k+1} 2 s1 / z_{2k+1}, b = (s1 + s2) / (2k)!. Defined whenever
/// s1 is a rational multiple of z_{2k+1}; throws NotDecomposable otherwise.
struct Decomposition {
  Scalar a;
  Scalar b;
};
Decomposition decompose(const TorsionTheory& t);

/// tau(t, e) - a*tau(fr, e) - b*tau(mmm, e); identically zero for every
/// decomposable theory, which is the uniqueness statement at this scale.
GradedClass difference_torsion(const TorsionTheory& t, const BundlePair& e);

}  // namespace torscalc

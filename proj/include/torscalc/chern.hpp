#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "torscalc/scalar.hpp"

namespace torscalc {

class DegreeMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An oriented vector bundle in split form: a signed multiset of rotation
/// planes, one Chern root of cohomological degree 2 each, plus a number of
/// trivial real line summands. Multiplicities and the trivial rank may be
/// negative (virtual complements).
class VirtualBundle {
 public:
  VirtualBundle() = default;  // the zero bundle

  static VirtualBundle line(const std::string& root);
  static VirtualBundle trivial(int rank);
  static VirtualBundle from_parts(std::map<std::string, int> roots, int trivial_rank);

  /// Whitney sum: multiplicities and trivial ranks add.
  friend VirtualBundle operator+(const VirtualBundle& a, const VirtualBundle& b);

  /// The bundle eta with *this + eta trivial of rank total_rank.
  VirtualBundle complement(int total_rank) const;

  /// 2 * (sum of multiplicities) + trivial rank.
  int real_rank() const;

  bool is_zero() const { return roots_.empty() && trivial_rank_ == 0; }
  const std::map<std::string, int>& roots() const { return roots_; }
  int trivial_rank() const { return trivial_rank_; }

  friend bool operator==(const VirtualBundle&, const VirtualBundle&) = default;

  /// Expression in the bundle declaration grammar, e.g.
  /// "line(x) + line(x) + trivial(2)"; negative parts are wrapped in a
  /// rank-zero complement. The zero bundle prints as "trivial(0)".
  std::string str() const;

 private:
  std::map<std::string, int> roots_;  // root name -> multiplicity, no zeros
  int trivial_rank_ = 0;
};

/// Monomial in Chern roots: root name -> exponent >= 1.
using ChernMonomial = std::map<std::string, int>;

/// Homogeneous polynomial in Chern roots with Scalar coefficients; an element
/// of H^degree(B; R) in formal form. Every stored monomial has total
/// cohomological degree equal to degree() (each root counts 2 per exponent).
class GradedClass {
 public:
  explicit GradedClass(int degree = 0);

  static GradedClass term(ChernMonomial monomial, Scalar coefficient);

  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<ChernMonomial, Scalar>& terms() const { return terms_; }

  GradedClass operator-() const;
  GradedClass& operator+=(const GradedClass& other);  // throws DegreeMismatch
  GradedClass& operator-=(const GradedClass& other);
  friend GradedClass operator+(GradedClass a, const GradedClass& b) { return a += b; }
  friend GradedClass operator-(GradedClass a, const GradedClass& b) { return a -= b; }
  friend GradedClass operator*(const GradedClass& a, const GradedClass& b);  // degrees add

  GradedClass scaled(const Scalar& s) const;

  friend bool operator==(const GradedClass&, const GradedClass&) = default;

  /// Canonical text form, e.g. "2*x^2 + 1/2*z3*y^2"; multi-term scalar
  /// coefficients are parenthesized. The zero class prints as "0".
  std::string str() const;

 private:
  int degree_ = 0;
  std::map<ChernMonomial, Scalar> terms_;  // no zero coefficients
};

/// Degree-4k part of the Chern character in the half-complexification
/// normalization ch4k(xi) = ch4k(xi (x) C) / 2: each rotation plane with root
/// x contributes x^{2k}/(2k)!; trivial summands contribute nothing for k >= 1.
GradedClass ch4k(const VirtualBundle& xi, int k);

}  // namespace torscalc

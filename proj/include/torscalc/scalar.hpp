#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace torscalc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A product of formal zeta symbols, stored as the sorted multiset of their
/// arguments. z3^2 * z5 is {3, 3, 5}. The empty monomial is the rational unit.
using ZetaMonomial = std::vector<int>;

class ScalarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroDivisor : public ScalarError {
 public:
  using ScalarError::ScalarError;
};

class NotDivisible : public ScalarError {
 public:
  using ScalarError::ScalarError;
};

class ScalarParseError : public ScalarError {
 public:
  using ScalarError::ScalarError;
};

/// Element of the coefficient ring Q[z3, z5, z7, ...]: an exact rational
/// linear combination of zeta monomials. The zeta symbols are free commutative
/// variables; nothing is ever evaluated numerically. Terms with zero
/// coefficient are never stored, so structural equality is ring equality.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int n) : Scalar(Rational(n)) {}
  Scalar(long long n) : Scalar(Rational(n)) {}
  Scalar(Integer n) : Scalar(Rational(std::move(n))) {}
  Scalar(Rational q);

  /// The formal symbol z_m for odd m >= 3.
  static Scalar zeta(int argument);
  static Scalar term(Rational coefficient, ZetaMonomial monomial);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Nonzero rational multiple of a single zeta monomial?
  bool is_monomial() const { return terms_.size() == 1; }
  /// Rational part (coefficient of the empty monomial).
  Rational rational_part() const;

  const std::map<ZetaMonomial, Rational>& terms() const { return terms_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);

  /// Exact division. The divisor must be a nonzero rational multiple of a
  /// single zeta monomial and every term must be divisible by it; the result
  /// q satisfies q * divisor == *this. Throws ZeroDivisor or NotDivisible.
  Scalar div_exact(const Scalar& divisor) const;

  friend bool operator==(const Scalar&, const Scalar&) = default;

  /// Canonical text form, terms sorted by monomial: "3/2 + -1/2*z3".
  std::string str() const;
  /// Parses the same grammar str() produces (also accepts "-" separators,
  /// "^" powers and products of zeta symbols). Round-trips exactly.
  static Scalar parse(std::string_view text);

 private:
  std::map<ZetaMonomial, Rational> terms_;
};

/// n! as an exact Scalar, n >= 0.
Scalar factorial(int n);

/// (-1)^n for any integer n.
int parity_sign(int n);

}  // namespace torscalc

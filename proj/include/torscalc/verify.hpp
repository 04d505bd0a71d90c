#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "torscalc/torsion.hpp"
#include "torscalc/transfer.hpp"

namespace torscalc {

class InvalidMinimizeCall : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Relative weights for the expression constructors drawn at each level;
/// leaves are spheres, disks, relative disks, trivial pairs and Hatcher
/// bundles.
struct GenWeights {
  int leaf = 2;
  int fiberwise_double = 1;
  int vertical_boundary = 1;
  int vertical_union = 1;
  int handle_union = 1;
  int product = 1;
  int morse = 1;

  int total() const {
    return leaf + fiberwise_double + vertical_boundary + vertical_union + handle_union +
           product + morse;
  }
};

struct GenOptions {
  std::uint64_t seed = 1;
  int max_depth = 3;
  std::vector<std::string> roots = {"x", "y"};
  GenWeights weights;
};

/// Deterministic generator of well-formed, evaluable bundle expressions and
/// theory parameters. Identical options produce identical output on every
/// platform. Gluing constructors are produced in matched configurations so
/// their geometric preconditions hold by construction.
class ExprGen {
 public:
  explicit ExprGen(GenOptions options);
  ExprGen(std::uint64_t seed, int max_depth, std::vector<std::string> roots)
      : ExprGen(GenOptions{seed, max_depth, std::move(roots), {}}) {}

  /// Any evaluable expression of depth <= max_depth.
  BundleRef expression() { return expression(options_.max_depth); }
  BundleRef expression(int depth);

  /// certified_closed expression.
  BundleRef closed_expression() { return closed_expression(options_.max_depth); }
  BundleRef closed_expression(int depth);

  /// Expression with computable vertical boundary torsion, suitable for
  /// doubling and gluing.
  BundleRef boundary_piece(int depth);

  /// Pieces sharing a common vertical boundary by construction; they may be
  /// structurally different presentations of it (a disk bundle of a sum
  /// against the fiber product of the summands' disk bundles).
  std::vector<BundleRef> matched_family(int count, int depth);

  BundleRef morse_expression(int depth);
  BundleRef leaf_expression();

  /// Honest bundle (non-negative multiplicities and trivial rank) of the
  /// given real rank.
  VirtualBundle bundle(int rank);
  /// Bundle of rank in [min_rank, max_rank]; occasionally a virtual
  /// complement presentation of the same rank.
  VirtualBundle any_bundle(int min_rank, int max_rank);

  /// Decomposable random theory in degree 4k: s1 rational multiple of
  /// z_{2k+1}, s2 an arbitrary small scalar.
  TorsionTheory random_theory(int k);

  Rational small_rational();
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  int range(int lo, int hi);  // inclusive
  bool chance(int numerator, int denominator);

 private:
  GenOptions options_;
  std::mt19937_64 engine_;
};

struct CheckReport {
  std::string name;
  std::string identity;        // statement of the identity being checked
  int samples = 0;
  bool passed = true;
  std::string counterexample;  // replayable DSL snippet, empty when passed
  std::string lhs;             // evaluated sides on the counterexample
  std::string rhs;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  int depth = 3;
  int samples = 50;
  int k = 1;
  int custom_theories = 10;
};

/// fr(k), mmm(k) and `count` random decomposable theories.
std::vector<TorsionTheory> default_theories(std::uint64_t seed, int k, int count);

/// Runs every identity check with exact equality (zero tolerance). Failures
/// are reported with a minimized counterexample, never thrown.
std::vector<CheckReport> run_suite(const SuiteOptions& options);
std::vector<CheckReport> run_suite(const SuiteOptions& options,
                                   const std::vector<TorsionTheory>& theories);

bool all_passed(const std::vector<CheckReport>& reports);

/// Replayable DSL text for a theory.
std::string theory_dsl(const TorsionTheory& t);

/// Greedily shrinks expr while `fails` keeps returning true on the shrunken
/// expression; the result is a local minimum. Throws InvalidMinimizeCall when
/// expr does not fail to begin with. Exceptions inside `fails` count as not
/// failing.
BundleRef minimize(BundleRef expr, const std::function<bool(const BundleRef&)>& fails);

}  // namespace torscalc

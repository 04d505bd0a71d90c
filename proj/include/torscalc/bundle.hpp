#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "torscalc/chern.hpp"

namespace torscalc {

class MalformedExpression : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedNode : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Euler characteristics of the four strata of the fiber pair (F, d0 F):
/// the fiber F, the pieces d0 F and d1 F of its vertical boundary, and the
/// corner d0 F n d1 F. For an honest compact manifold pair these satisfy
///   dim even:  chi0 == chi1 and corner == 2 * chi0
///   dim odd:   corner == 0 and chi0 + chi1 == 2 * chi
/// (the boundary of an odd-dimensional compact manifold has twice its Euler
/// characteristic, the boundary of an even-dimensional one has none).
struct FiberStats {
  int dim = 0;
  int chi = 0;     // chi(F)
  int chi0 = 0;    // chi(d0 F)
  int chi1 = 0;    // chi(d1 F)
  int corner = 0;  // chi(d0 F n d1 F)

  int chi_boundary() const { return chi0 + chi1 - corner; }  // chi of the whole dv F
  int chi_rel() const { return chi - chi0; }                 // chi(F, d0)
  int chi_rel1() const { return chi - chi1; }                // chi(F, d1)

  friend bool operator==(const FiberStats&, const FiberStats&) = default;
};

enum class BundleKind {
  kTrivial,           // product bundle B x (F, d0 F)
  kSphere,            // linear S^n bundle of xi, rank xi == n + 1
  kDisk,              // linear disk bundle of xi, d0 empty
  kRelDisk,           // the pair (D^n(xi), S^{n-1}(xi))
  kDouble,            // fiberwise double of the total space
  kVerticalBoundary,  // the closed bundle dv E
  kUnionVertical,     // glue two pieces along their whole vertical boundary
  kUnionHandle,       // glue with E1 n E2 = d0 E2 inside d1 E1
  kFiberProduct,      // E x_B E', d0 = d0 E x E' u E x d0 E'
  kMorse,             // fiberwise Morse function over a base bundle d0 E
  kHatcher,           // exotic disk bundle from two canceling handles
};

/// One critical point of a fiberwise Morse function: handle index plus the
/// negative and positive eigenspace bundles of the fiberwise second
/// derivative.
struct MorseHandle {
  int index = 0;
  VirtualBundle negative;  // real rank == index; the zero bundle for index 0
  VirtualBundle positive;  // real rank == fiber dim - index

  friend bool operator==(const MorseHandle&, const MorseHandle&) = default;
};

class BundlePair;
using BundleRef = std::shared_ptr<const BundlePair>;

/// Immutable expression describing a unipotent smooth bundle pair
/// (E, d0 E) -> B over the abstract connected base B. Construction computes
/// fiber statistics; validate() reports structural problems.
class BundlePair {
 public:
  BundleKind kind() const { return kind_; }
  const FiberStats& stats() const { return stats_; }

  // Payload accessors; meaningful for the kinds noted.
  const VirtualBundle& bundle() const { return bundle_; }       // sphere/disk/reldisk/hatcher
  int sphere_dim() const { return n_; }                         // sphere
  int hatcher_n() const { return n_; }                          // hatcher
  int total_rank() const { return total_rank_; }                // hatcher
  const BundleRef& child() const { return left_; }              // double/vertical boundary
  const BundleRef& left() const { return left_; }               // unions/products
  const BundleRef& right() const { return right_; }             // unions/products
  const BundleRef& base() const { return left_; }               // morse
  const std::vector<MorseHandle>& handles() const { return handles_; }  // morse

  /// Hatcher's bundle as Morse data: an (n-1)-handle with trivial negative
  /// eigenspace bundle followed by an n-handle carrying xi, with positive
  /// eigenspace bundles completing the fiber dimension.
  std::vector<MorseHandle> hatcher_handles() const;

  friend bool operator==(const BundlePair& a, const BundlePair& b);

  static BundleRef make_trivial(FiberStats stats);
  static BundleRef make_sphere(VirtualBundle xi, int n);
  static BundleRef make_disk(VirtualBundle xi);
  static BundleRef make_rel_disk(VirtualBundle xi);
  static BundleRef make_double(BundleRef e);
  static BundleRef make_vertical_boundary(BundleRef e);
  static BundleRef make_union_vertical(BundleRef a, BundleRef b);
  static BundleRef make_union_handle(BundleRef a, BundleRef b);
  static BundleRef make_fiber_product(BundleRef a, BundleRef b);
  static BundleRef make_morse(BundleRef base, std::vector<MorseHandle> handles);
  static BundleRef make_hatcher(VirtualBundle xi, int n, int total_rank);

 private:
  BundlePair() = default;

  BundleKind kind_ = BundleKind::kTrivial;
  FiberStats stats_;
  VirtualBundle bundle_;
  int n_ = 0;
  int total_rank_ = 0;
  BundleRef left_;
  BundleRef right_;
  std::vector<MorseHandle> handles_;
};

struct Diagnostic {
  std::string path;     // node position, e.g. "union.left.sphere"
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Checks every node invariant (rank and dimension coherence, Euler
/// characteristic parity constraints). Returns diagnostics instead of
/// throwing; an empty result means the expression is well formed.
std::vector<Diagnostic> validate(const BundlePair& e);

/// Throws MalformedExpression with the first diagnostic if validate fails.
void ensure_valid(const BundlePair& e);

/// Conservative structural test: true only for expressions whose total space
/// is a closed bundle by construction (spheres, doubles, vertical boundaries,
/// vertical unions, closed trivial bundles and fiber products of such).
bool certified_closed(const BundlePair& e);

/// True when the torsion of the vertical boundary of e is computable by
/// structural recursion (fails for handle unions, Morse nodes and Hatcher
/// nodes, whose dv is not expressible in this calculus).
bool vertical_boundary_supported(const BundlePair& e);

/// True when every evaluation rule needed for e is available; doubles,
/// vertical boundaries and vertical unions additionally need
/// vertical_boundary_supported children.
bool torsion_evaluable(const BundlePair& e);

/// Root names referenced anywhere in the expression.
std::set<std::string> referenced_roots(const BundlePair& e);

/// Expression text in the DSL grammar, replayable through the CLI.
std::string dsl_expr(const BundlePair& e);

/// Declared Chern roots and named bundles over the abstract base B.
class Workspace {
 public:
  /// Declares a root name; identifiers of the form z<digits> are reserved
  /// for zeta symbols. Throws std::invalid_argument on redefinition.
  void declare_root(const std::string& name);
  bool has_root(const std::string& name) const { return roots_.count(name) > 0; }
  const std::set<std::string>& roots() const { return roots_; }

  /// Defines a named bundle; every referenced root must be declared.
  void define_bundle(const std::string& name, VirtualBundle bundle);
  const VirtualBundle* find_bundle(const std::string& name) const;

  /// Diagnostics for roots used by e but not declared here.
  std::vector<Diagnostic> validate_roots(const BundlePair& e) const;

 private:
  std::set<std::string> roots_;
  std::map<std::string, VirtualBundle> bundles_;
};

}  // namespace torscalc

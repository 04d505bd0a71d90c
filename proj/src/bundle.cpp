#include "torscalc/bundle.hpp"

#include <algorithm>
#include <cctype>

namespace torscalc {

namespace {

int chi_sphere(int m) { return m >= 0 ? 1 + parity_sign(m) : 0; }

}  // namespace

std::vector<MorseHandle> BundlePair::hatcher_handles() const {
  // One canceling pair: index n-1 with trivial negative eigenspace bundle,
  // then index n carrying xi with complementary positive eigenspace bundle.
  const int fiber_dim = total_rank_;
  std::vector<MorseHandle> handles;
  handles.push_back({n_ - 1, VirtualBundle::trivial(n_ - 1),
                     VirtualBundle::trivial(fiber_dim - (n_ - 1))});
  handles.push_back({n_, bundle_, bundle_.complement(total_rank_)});
  return handles;
}

bool operator==(const BundlePair& a, const BundlePair& b) {
  if (a.kind_ != b.kind_ || !(a.stats_ == b.stats_) || !(a.bundle_ == b.bundle_) ||
      a.n_ != b.n_ || a.total_rank_ != b.total_rank_ || a.handles_ != b.handles_) {
    return false;
  }
  auto same_child = [](const BundleRef& x, const BundleRef& y) {
    if (!x || !y) return !x && !y;
    return x == y || *x == *y;
  };
  return same_child(a.left_, b.left_) && same_child(a.right_, b.right_);
}

BundleRef BundlePair::make_trivial(FiberStats stats) {
  auto node = std::shared_ptr<BundlePair>(new BundlePair);
  node->kind_ = BundleKind::kTrivial;
  node->stats_ = stats;
  return node;
}

BundleRef BundlePair::make_sphere(VirtualBundle xi, int n) {
  auto node = std::shared_ptr<BundlePair>(new BundlePair);
  node->kind_ = BundleKind::kSphere;
  node->bundle_ = std::move(xi);
  node->n_ = n;
  node->stats_ = {n, chi_sphere(n), 0, 0, 0};
  return node;
}

BundleRef BundlePair::make_disk(VirtualBundle xi) {
  auto node = std::shared_ptr<BundlePair>(new BundlePair);
  node->kind_ = BundleKind::kDisk;
  const int n = xi.real_rank();
  node->bundle_ = std::move(xi);
  node->stats_ = {n, 1, 0, n >= 1 ? chi_sphere(n - 1) : 0, 0};
  return node;
}

BundleRef BundlePair::make_rel_disk(VirtualBundle xi) {
  auto node = std::shared_ptr<BundlePair>(new BundlePair);
  node->kind_ = BundleKind::kRelDisk;
  const int n = xi.real_rank();
  node->bundle_ = std::move(xi);
  node->stats_ = {n, 1, n >= 1 ? chi_sphere(n - 1) : 0, 0, 0};
  return node;
}

BundleRef BundlePair::make_double(BundleRef e) {
  auto node = std::shared_ptr<BundlePair>(new BundlePair);
  node->kind_ = BundleKind::kDouble;
  const FiberStats& s = e->stats();
  node->stats_ = {s.dim, 2 * s.chi - s.chi_boundary(), 0, 0, 0};
  node->left_ = std::move(e);
  return node;
}

BundleRef BundlePair::make_vertical_boundary(BundleRef e) {
  auto node = std::shared_ptr<BundlePair>(new BundlePair);
  node->kind_ = BundleKind::kVerticalBoundary;
  const FiberStats& s = e->stats();
  node->stats_ = {s.dim - 1, s.chi_boundary(), 0, 0, 0};
  node->left_ = std::move(e);
  return node;
}

BundleRef BundlePair::make_union_vertical(BundleRef a, BundleRef b) {
  auto node = std::shared_ptr<BundlePair>(new BundlePair);
  node->kind_ = BundleKind::kUnionVertical;
  const FiberStats& sa = a->stats();
  const FiberStats& sb = b->stats();
  node->stats_ = {sa.dim, sa.chi + sb.chi - sa.chi_boundary(), 0, 0, 0};
  node->left_ = std::move(a);
  node->right_ = std::move(b);
  return node;
}

BundleRef BundlePair::make_union_handle(BundleRef a, BundleRef b) {
  auto node = std::shared_ptr<BundlePair>(new BundlePair);
  node->kind_ = BundleKind::kUnionHandle;
  const FiberStats& sa = a->stats();
  const FiberStats& sb = b->stats();
  node->stats_ = {sa.dim, sa.chi + sb.chi - sb.chi0, sa.chi0,
                  sa.chi1 + sb.chi1 - sb.chi0, sa.corner};
  node->left_ = std::move(a);
  node->right_ = std::move(b);
  return node;
}

BundleRef BundlePair::make_fiber_product(BundleRef a, BundleRef b) {
  auto node = std::shared_ptr<BundlePair>(new BundlePair);
  node->kind_ = BundleKind::kFiberProduct;
  const FiberStats& sa = a->stats();
  const FiberStats& sb = b->stats();
  FiberStats s;
  s.dim = sa.dim + sb.dim;
  s.chi = sa.chi * sb.chi;
  s.chi0 = sa.chi0 * sb.chi + sa.chi * sb.chi0 - sa.chi0 * sb.chi0;
  s.chi1 = sa.chi1 * sb.chi + sa.chi * sb.chi1 - sa.chi1 * sb.chi1;
  const int bva = sa.chi_boundary();
  const int bvb = sb.chi_boundary();
  const int bv = bva * sb.chi + sa.chi * bvb - bva * bvb;
  s.corner = s.chi0 + s.chi1 - bv;
  node->stats_ = s;
  node->left_ = std::move(a);
  node->right_ = std::move(b);
  return node;
}

BundleRef BundlePair::make_morse(BundleRef base, std::vector<MorseHandle> handles) {
  auto node = std::shared_ptr<BundlePair>(new BundlePair);
  node->kind_ = BundleKind::kMorse;
  const FiberStats& sb = base->stats();
  const int n = sb.dim + 1;
  int handle_chi = 0;
  for (const MorseHandle& h : handles) handle_chi += parity_sign(h.index);
  FiberStats s;
  s.dim = n;
  s.chi0 = sb.chi;
  s.chi = s.chi0 + handle_chi;
  // Turning the Morse function upside down decomposes (F, d1 F) with handle
  // indices n - i, so chi(d1 F) = chi(F) - (-1)^n * sum of handle signs.
  s.chi1 = s.chi - parity_sign(n) * handle_chi;
  s.corner = sb.chi_boundary();
  node->stats_ = s;
  node->left_ = std::move(base);
  node->handles_ = std::move(handles);
  return node;
}

BundleRef BundlePair::make_hatcher(VirtualBundle xi, int n, int total_rank) {
  auto node = std::shared_ptr<BundlePair>(new BundlePair);
  node->kind_ = BundleKind::kHatcher;
  node->bundle_ = std::move(xi);
  node->n_ = n;
  node->total_rank_ = total_rank;
  // Fiber is an h-cobordism of a disk: contractible, with d0 a disk and the
  // complementary boundary piece another disk.
  node->stats_ = {total_rank, 1, 1, 1, total_rank % 2 == 0 ? 2 : 0};
  return node;
}

namespace {

void check_stats_parity(const FiberStats& s, const std::string& path,
                        std::vector<Diagnostic>& out) {
  if (s.dim % 2 == 0) {
    if (s.chi0 != s.chi1) {
      out.push_back({path, "even-dimensional fiber needs chi(d0) == chi(d1), got " +
                               std::to_string(s.chi0) + " and " + std::to_string(s.chi1)});
    }
    if (s.corner != 2 * s.chi0) {
      out.push_back({path, "even-dimensional fiber needs corner == 2*chi(d0)"});
    }
  } else {
    if (s.corner != 0) {
      out.push_back({path, "odd-dimensional fiber needs an empty corner"});
    }
    if (s.chi0 + s.chi1 != 2 * s.chi) {
      out.push_back({path, "odd-dimensional fiber needs chi(d0) + chi(d1) == 2*chi(F)"});
    }
  }
}

void validate_node(const BundlePair& e, const std::string& path, std::vector<Diagnostic>& out) {
  switch (e.kind()) {
    case BundleKind::kTrivial:
      if (e.stats().dim < 0) out.push_back({path, "fiber dimension must be >= 0"});
      check_stats_parity(e.stats(), path, out);
      break;
    case BundleKind::kSphere:
      if (e.sphere_dim() < 1) {
        out.push_back({path, "sphere bundles need n >= 1 (S^0 bundles carry no torsion value)"});
      }
      if (e.bundle().real_rank() != e.sphere_dim() + 1) {
        out.push_back({path, "sphere(xi, n) needs real rank " + std::to_string(e.sphere_dim() + 1) +
                                 ", bundle has rank " + std::to_string(e.bundle().real_rank())});
      }
      break;
    case BundleKind::kDisk:
      if (e.bundle().real_rank() < 0) {
        out.push_back({path, "disk bundles need a bundle of non-negative rank"});
      }
      break;
    case BundleKind::kRelDisk:
      if (e.bundle().real_rank() < 1) {
        out.push_back({path, "relative disk bundles need a bundle of rank >= 1"});
      }
      break;
    case BundleKind::kDouble:
      validate_node(*e.child(), path + ".double", out);
      break;
    case BundleKind::kVerticalBoundary:
      if (e.child()->stats().dim < 1) {
        out.push_back({path, "vertical boundary of a 0-dimensional fiber"});
      }
      validate_node(*e.child(), path + ".dv", out);
      break;
    case BundleKind::kUnionVertical: {
      const FiberStats& sa = e.left()->stats();
      const FiberStats& sb = e.right()->stats();
      if (sa.dim != sb.dim) {
        out.push_back({path, "union pieces have fiber dimensions " + std::to_string(sa.dim) +
                                 " and " + std::to_string(sb.dim)});
      }
      if (sa.chi_boundary() != sb.chi_boundary()) {
        out.push_back({path, "union pieces have vertical boundaries of different Euler "
                             "characteristic"});
      }
      validate_node(*e.left(), path + ".left", out);
      validate_node(*e.right(), path + ".right", out);
      break;
    }
    case BundleKind::kUnionHandle:
      if (e.left()->stats().dim != e.right()->stats().dim) {
        out.push_back({path, "glued pieces have different fiber dimensions"});
      }
      validate_node(*e.left(), path + ".left", out);
      validate_node(*e.right(), path + ".right", out);
      break;
    case BundleKind::kFiberProduct:
      validate_node(*e.left(), path + ".left", out);
      validate_node(*e.right(), path + ".right", out);
      break;
    case BundleKind::kMorse: {
      const int n = e.stats().dim;
      for (size_t i = 0; i < e.handles().size(); ++i) {
        const MorseHandle& h = e.handles()[i];
        const std::string hpath = path + ".handle[" + std::to_string(i) + "]";
        if (h.index < 0 || h.index > n) {
          out.push_back({hpath, "handle index must lie between 0 and the fiber dimension"});
        }
        if (h.negative.real_rank() != h.index) {
          out.push_back({hpath, "negative eigenspace bundle must have real rank equal to the "
                                "handle index"});
        }
        if (h.index == 0 && !h.negative.is_zero()) {
          out.push_back({hpath, "index-0 handles carry the zero negative eigenspace bundle"});
        }
        if (h.negative.real_rank() + h.positive.real_rank() != n) {
          out.push_back({hpath, "eigenspace bundles must sum to the fiber dimension"});
        }
      }
      validate_node(*e.base(), path + ".base", out);
      break;
    }
    case BundleKind::kHatcher:
      if (e.hatcher_n() < 2) {
        out.push_back({path, "hatcher bundles need n >= 2"});
      }
      if (e.bundle().real_rank() != e.hatcher_n()) {
        out.push_back({path, "hatcher(xi, n) needs a bundle of real rank n"});
      }
      if (e.total_rank() < e.hatcher_n()) {
        out.push_back({path, "hatcher total rank must be at least n"});
      }
      break;
  }
}

}  // namespace

std::vector<Diagnostic> validate(const BundlePair& e) {
  std::vector<Diagnostic> out;
  validate_node(e, "expr", out);
  return out;
}

void ensure_valid(const BundlePair& e) {
  auto diagnostics = validate(e);
  if (!diagnostics.empty()) {
    throw MalformedExpression(diagnostics.front().path + ": " + diagnostics.front().message);
  }
}

bool certified_closed(const BundlePair& e) {
  switch (e.kind()) {
    case BundleKind::kTrivial: {
      const FiberStats& s = e.stats();
      return s.chi0 == 0 && s.chi1 == 0 && s.corner == 0;
    }
    case BundleKind::kSphere:
    case BundleKind::kDouble:
    case BundleKind::kVerticalBoundary:
    case BundleKind::kUnionVertical:
      return true;
    case BundleKind::kFiberProduct:
      return certified_closed(*e.left()) && certified_closed(*e.right());
    default:
      return false;
  }
}

namespace {

bool d0_supported(const BundlePair& e);
bool total_supported(const BundlePair& e);

bool expression_supported(const BundlePair& e) {
  switch (e.kind()) {
    case BundleKind::kTrivial:
    case BundleKind::kSphere:
    case BundleKind::kDisk:
    case BundleKind::kRelDisk:
    case BundleKind::kMorse:  // relative torsion needs only the handle data
    case BundleKind::kHatcher:
      return true;
    case BundleKind::kDouble:
    case BundleKind::kVerticalBoundary:
      return total_supported(*e.child()) && vertical_boundary_supported(*e.child());
    case BundleKind::kUnionVertical:
      return total_supported(*e.left()) && total_supported(*e.right()) &&
             vertical_boundary_supported(*e.left());
    case BundleKind::kUnionHandle:
      return expression_supported(*e.left()) && expression_supported(*e.right());
    case BundleKind::kFiberProduct:
      return expression_supported(*e.left()) && expression_supported(*e.right());
  }
  return false;
}

bool d0_supported(const BundlePair& e) {
  switch (e.kind()) {
    case BundleKind::kUnionHandle:
      return d0_supported(*e.left());
    case BundleKind::kFiberProduct:
      return total_supported(*e.left()) && total_supported(*e.right()) &&
             d0_supported(*e.left()) && d0_supported(*e.right());
    case BundleKind::kMorse:
      return total_supported(*e.base());
    default:
      return true;
  }
}

bool total_supported(const BundlePair& e) {
  return expression_supported(e) && d0_supported(e);
}

}  // namespace

bool vertical_boundary_supported(const BundlePair& e) {
  switch (e.kind()) {
    case BundleKind::kTrivial:
    case BundleKind::kSphere:
    case BundleKind::kDisk:
    case BundleKind::kRelDisk:
    case BundleKind::kDouble:
    case BundleKind::kVerticalBoundary:
    case BundleKind::kUnionVertical:
      return true;
    case BundleKind::kFiberProduct:
      return vertical_boundary_supported(*e.left()) && vertical_boundary_supported(*e.right()) &&
             total_supported(*e.left()) && total_supported(*e.right());
    case BundleKind::kUnionHandle:
    case BundleKind::kMorse:
    case BundleKind::kHatcher:
      return false;
  }
  return false;
}

bool torsion_evaluable(const BundlePair& e) { return expression_supported(e); }

namespace {

void collect_roots(const VirtualBundle& b, std::set<std::string>& out) {
  for (const auto& [name, mult] : b.roots()) out.insert(name);
}

}  // namespace

std::set<std::string> referenced_roots(const BundlePair& e) {
  std::set<std::string> out;
  collect_roots(e.bundle(), out);
  for (const MorseHandle& h : e.handles()) {
    collect_roots(h.negative, out);
    collect_roots(h.positive, out);
  }
  for (const BundleRef& child : {e.left(), e.right()}) {
    if (child) {
      auto sub = referenced_roots(*child);
      out.insert(sub.begin(), sub.end());
    }
  }
  return out;
}

std::string dsl_expr(const BundlePair& e) {
  switch (e.kind()) {
    case BundleKind::kTrivial: {
      const FiberStats& s = e.stats();
      std::string out = "trivial(dim=" + std::to_string(s.dim) + ", chi=" + std::to_string(s.chi);
      if (s.chi0 != 0) out += ", chi0=" + std::to_string(s.chi0);
      if (s.chi1 != 0) out += ", chi1=" + std::to_string(s.chi1);
      if (s.corner != 0) out += ", corner=" + std::to_string(s.corner);
      return out + ")";
    }
    case BundleKind::kSphere:
      return "sphere(" + e.bundle().str() + ", n=" + std::to_string(e.sphere_dim()) + ")";
    case BundleKind::kDisk:
      return "disk(" + e.bundle().str() + ")";
    case BundleKind::kRelDisk:
      return "reldisk(" + e.bundle().str() + ")";
    case BundleKind::kDouble:
      return "double(" + dsl_expr(*e.child()) + ")";
    case BundleKind::kVerticalBoundary:
      return "dv(" + dsl_expr(*e.child()) + ")";
    case BundleKind::kUnionVertical:
      return "union(" + dsl_expr(*e.left()) + ", " + dsl_expr(*e.right()) + ")";
    case BundleKind::kUnionHandle:
      return "glue(" + dsl_expr(*e.left()) + ", " + dsl_expr(*e.right()) + ")";
    case BundleKind::kFiberProduct:
      return "prod(" + dsl_expr(*e.left()) + ", " + dsl_expr(*e.right()) + ")";
    case BundleKind::kMorse: {
      std::string out = "morse(base=" + dsl_expr(*e.base()) + ", handles=[";
      bool first = true;
      for (const MorseHandle& h : e.handles()) {
        if (!first) out += ", ";
        first = false;
        out += "(" + std::to_string(h.index) + ", " + h.negative.str() + ", " +
               h.positive.str() + ")";
      }
      return out + "])";
    }
    case BundleKind::kHatcher:
      return "hatcher(" + e.bundle().str() + ", n=" + std::to_string(e.hatcher_n()) +
             ", total=" + std::to_string(e.total_rank()) + ")";
  }
  return "?";
}

namespace {

bool is_identifier(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_zeta_name(const std::string& name) {
  if (name.size() < 2 || name[0] != 'z') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "root",  "vb",     "theory", "query",   "line",    "trivial", "complement",
      "sphere", "disk",  "reldisk", "double", "dv",      "union",   "glue",
      "prod",  "morse",  "hatcher", "fr",     "mmm",     "custom",  "tau",
      "tau_even", "tau_odd", "tdelta", "m2k", "chi",     "transfer", "base",
      "handles", "n",    "total",  "dim",    "chi0",    "chi1",    "corner"};
  return words;
}

}  // namespace

void Workspace::declare_root(const std::string& name) {
  if (!is_identifier(name)) {
    throw std::invalid_argument("root name must be an identifier: '" + name + "'");
  }
  if (is_zeta_name(name)) {
    throw std::invalid_argument("root name '" + name + "' is reserved for zeta symbols");
  }
  if (reserved_words().count(name) > 0) {
    throw std::invalid_argument("root name '" + name + "' is a reserved word");
  }
  if (!roots_.insert(name).second) {
    throw std::invalid_argument("root '" + name + "' is already declared");
  }
}

void Workspace::define_bundle(const std::string& name, VirtualBundle bundle) {
  for (const auto& [root, mult] : bundle.roots()) {
    if (!has_root(root)) {
      throw std::invalid_argument("bundle '" + name + "' references undeclared root '" + root +
                                  "'");
    }
  }
  if (!bundles_.emplace(name, std::move(bundle)).second) {
    throw std::invalid_argument("bundle '" + name + "' is already defined");
  }
}

const VirtualBundle* Workspace::find_bundle(const std::string& name) const {
  auto it = bundles_.find(name);
  return it == bundles_.end() ? nullptr : &it->second;
}

std::vector<Diagnostic> Workspace::validate_roots(const BundlePair& e) const {
  std::vector<Diagnostic> out;
  for (const std::string& root : referenced_roots(e)) {
    if (!has_root(root)) out.push_back({"expr", "undeclared root '" + root + "'"});
  }
  return out;
}

}  // namespace torscalc

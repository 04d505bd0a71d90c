#include "torscalc/verify.hpp"

#include <algorithm>

namespace torscalc {

ExprGen::ExprGen(GenOptions options) : options_(std::move(options)), engine_(options_.seed) {
  if (options_.roots.empty()) {
    throw std::invalid_argument("expression generator needs a nonempty root pool");
  }
  if (options_.weights.total() <= 0) {
    throw std::invalid_argument("constructor weights must have a positive total");
  }
}

int ExprGen::range(int lo, int hi) {
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool ExprGen::chance(int numerator, int denominator) {
  return static_cast<int>(below(denominator)) < numerator;
}

Rational ExprGen::small_rational() {
  return Rational(range(-9, 9), range(1, 4));
}

VirtualBundle ExprGen::bundle(int rank) {
  VirtualBundle out;
  const int planes = static_cast<int>(below(rank / 2 + 1));
  for (int i = 0; i < planes; ++i) {
    out = out + VirtualBundle::line(options_.roots[below(options_.roots.size())]);
  }
  return out + VirtualBundle::trivial(rank - 2 * planes);
}

VirtualBundle ExprGen::any_bundle(int min_rank, int max_rank) {
  const int rank = range(min_rank, max_rank);
  if (chance(1, 8)) {
    // Same rank presented as a virtual complement.
    const int extra = range(1, 2);
    return bundle(rank + 2 * extra).complement(2 * rank + 2 * extra);
  }
  return bundle(rank);
}

TorsionTheory ExprGen::random_theory(int k) {
  Scalar zeta = Scalar::zeta(2 * k + 1);
  Scalar s1 = Scalar(small_rational()) * zeta;
  Scalar s2 = Scalar(small_rational()) + Scalar(small_rational()) * zeta;
  if (chance(1, 4)) s2 += Scalar(small_rational()) * Scalar::zeta(2 * k + 3);
  return custom_theory(k, std::move(s1), std::move(s2));
}

namespace {

FiberStats closed_trivial_stats(ExprGen& g) {
  const int dim = g.range(0, 4);
  static constexpr int kEvenChis[] = {-2, 0, 2, 3, 4};
  const int chi = dim % 2 == 1 ? 0 : kEvenChis[g.below(5)];
  return {dim, chi, 0, 0, 0};
}

FiberStats bounded_trivial_stats(ExprGen& g) {
  const int dim = g.range(1, 4);
  FiberStats s;
  s.dim = dim;
  s.chi = g.range(-1, 2);
  if (dim % 2 == 1) {
    const int choices[] = {0, s.chi, 2 * s.chi};
    s.chi0 = choices[g.below(3)];
    s.chi1 = 2 * s.chi - s.chi0;
    s.corner = 0;
  } else {
    s.chi0 = s.chi1 = g.range(0, 2);
    s.corner = 2 * s.chi0;
  }
  return s;
}

}  // namespace

BundleRef ExprGen::boundary_piece(int depth) {
  if (depth > 0 && chance(1, 3)) {
    if (chance(1, 2)) {
      return BundlePair::make_fiber_product(boundary_piece(depth - 1),
                                            closed_expression(depth - 1));
    }
    return BundlePair::make_fiber_product(boundary_piece(depth - 1), boundary_piece(depth - 1));
  }
  switch (below(3)) {
    case 0:
      return BundlePair::make_disk(any_bundle(1, 4));
    case 1:
      return BundlePair::make_rel_disk(any_bundle(1, 4));
    default:
      return BundlePair::make_trivial(bounded_trivial_stats(*this));
  }
}

BundleRef ExprGen::closed_expression(int depth) {
  if (depth <= 0 || chance(2, 5)) {
    if (chance(1, 2)) {
      const int n = range(1, 4);
      return BundlePair::make_sphere(any_bundle(n + 1, n + 1), n);
    }
    return BundlePair::make_trivial(closed_trivial_stats(*this));
  }
  switch (below(4)) {
    case 0:
      return BundlePair::make_double(boundary_piece(depth - 1));
    case 1: {
      auto family = matched_family(2, depth - 1);
      return BundlePair::make_union_vertical(family[0], family[1]);
    }
    case 2:
      return BundlePair::make_vertical_boundary(boundary_piece(depth - 1));
    default:
      return BundlePair::make_fiber_product(closed_expression(depth - 1),
                                            closed_expression(depth - 1));
  }
}

std::vector<BundleRef> ExprGen::matched_family(int count, int depth) {
  std::vector<BundleRef> family;
  const int strategy = depth > 0 ? static_cast<int>(below(3)) : static_cast<int>(below(2));
  if (strategy == 0) {
    BundleRef piece = boundary_piece(depth);
    family.assign(count, piece);
  } else if (strategy == 1) {
    // D(xi1 + xi2) and D(xi1) x_B D(xi2) bound the same sphere bundle.
    VirtualBundle xi1 = bundle(range(1, 3));
    VirtualBundle xi2 = bundle(range(1, 3));
    for (int i = 0; i < count; ++i) {
      if (chance(1, 2)) {
        family.push_back(BundlePair::make_disk(xi1 + xi2));
      } else {
        family.push_back(BundlePair::make_fiber_product(BundlePair::make_disk(xi1),
                                                        BundlePair::make_disk(xi2)));
      }
    }
  } else {
    auto inner = matched_family(count, depth - 1);
    BundleRef closed = closed_expression(depth - 1);
    for (auto& piece : inner) {
      family.push_back(BundlePair::make_fiber_product(piece, closed));
    }
  }
  return family;
}

BundleRef ExprGen::morse_expression(int depth) {
  BundleRef base;
  if (depth > 0 && chance(1, 3)) {
    base = chance(1, 2) ? boundary_piece(depth - 1) : closed_expression(depth - 1);
  } else if (chance(1, 2)) {
    base = BundlePair::make_trivial(closed_trivial_stats(*this));
  } else {
    base = BundlePair::make_trivial(bounded_trivial_stats(*this));
  }
  const int n = base->stats().dim + 1;
  std::vector<MorseHandle> handles;
  const int count = range(1, 3);
  for (int i = 0; i < count; ++i) {
    const int index = range(0, n);
    MorseHandle h;
    h.index = index;
    h.negative = index == 0 ? VirtualBundle() : bundle(index);
    h.positive = bundle(n - index);
    handles.push_back(std::move(h));
  }
  return BundlePair::make_morse(std::move(base), std::move(handles));
}

namespace {

BundleRef handle_attachment(ExprGen& g, int depth) {
  // Pieces in the relative gluing configuration: E1 n E2 = d0 E2 inside d1 E1.
  BundleRef a;
  if (depth > 1 && g.chance(1, 4)) {
    a = g.morse_expression(depth - 1);
  } else {
    a = g.boundary_piece(depth - 1);
  }
  const int n = a->stats().dim;
  if (n < 1) return a;  // dimension 0: nothing to attach
  if (a->kind() == BundleKind::kDisk && g.chance(1, 3)) {
    // Cap the disk bundle with its relative disk bundle (a sphere bundle).
    return BundlePair::make_union_handle(a, BundlePair::make_rel_disk(a->bundle()));
  }
  // Attach a handle bundle D(xi) x D(eta) along S(xi) x D(eta).
  const int index = g.range(1, n);
  return BundlePair::make_union_handle(
      a, BundlePair::make_fiber_product(BundlePair::make_rel_disk(g.bundle(index)),
                                        BundlePair::make_disk(g.bundle(n - index))));
}

}  // namespace

BundleRef ExprGen::leaf_expression() {
  switch (below(5)) {
    case 0: {
      const int n = range(1, 4);
      return BundlePair::make_sphere(any_bundle(n + 1, n + 1), n);
    }
    case 1:
      return BundlePair::make_disk(any_bundle(1, 4));
    case 2:
      return BundlePair::make_rel_disk(any_bundle(1, 4));
    case 3:
      return chance(1, 2) ? BundlePair::make_trivial(closed_trivial_stats(*this))
                          : BundlePair::make_trivial(bounded_trivial_stats(*this));
    default: {
      const int n = range(2, 4);
      return BundlePair::make_hatcher(bundle(n), n, n + range(1, 4));
    }
  }
}

BundleRef ExprGen::expression(int depth) {
  const GenWeights& w = options_.weights;
  if (depth <= 0) return leaf_expression();
  int pick = static_cast<int>(below(w.total()));
  if ((pick -= w.leaf) < 0) return leaf_expression();
  if ((pick -= w.fiberwise_double) < 0) {
    return BundlePair::make_double(boundary_piece(depth - 1));
  }
  if ((pick -= w.vertical_boundary) < 0) {
    return BundlePair::make_vertical_boundary(boundary_piece(depth - 1));
  }
  if ((pick -= w.vertical_union) < 0) {
    auto family = matched_family(2, depth - 1);
    return BundlePair::make_union_vertical(family[0], family[1]);
  }
  if ((pick -= w.handle_union) < 0) return handle_attachment(*this, depth);
  if ((pick -= w.product) < 0) {
    return BundlePair::make_fiber_product(expression(depth - 1), expression(depth - 1));
  }
  return morse_expression(depth);
}

std::string theory_dsl(const TorsionTheory& t) {
  return "custom(" + std::to_string(t.k) + ", " + t.s1.str() + ", " + t.s2.str() + ")";
}

std::vector<TorsionTheory> default_theories(std::uint64_t seed, int k, int count) {
  std::vector<TorsionTheory> theories = {fr_theory(k), mmm_theory(k)};
  ExprGen gen(seed, 1, {"x"});
  for (int i = 0; i < count; ++i) theories.push_back(gen.random_theory(k));
  return theories;
}

// ---------------------------------------------------------------------------
// Shrinking

namespace {

void bundle_variants(const VirtualBundle& b, std::vector<VirtualBundle>& out) {
  // Replace one rotation plane by two trivial lines; ranks are preserved.
  for (const auto& [name, mult] : b.roots()) {
    auto roots = b.roots();
    roots[name] += mult > 0 ? -1 : 1;
    out.push_back(VirtualBundle::from_parts(std::move(roots), b.trivial_rank() + 2));
  }
}

BundleRef rebuild(const BundlePair& e, int position, BundleRef child) {
  switch (e.kind()) {
    case BundleKind::kDouble:
      return BundlePair::make_double(std::move(child));
    case BundleKind::kVerticalBoundary:
      return BundlePair::make_vertical_boundary(std::move(child));
    case BundleKind::kUnionVertical:
      return position == 0 ? BundlePair::make_union_vertical(std::move(child), e.right())
                           : BundlePair::make_union_vertical(e.left(), std::move(child));
    case BundleKind::kUnionHandle:
      return position == 0 ? BundlePair::make_union_handle(std::move(child), e.right())
                           : BundlePair::make_union_handle(e.left(), std::move(child));
    case BundleKind::kFiberProduct:
      return position == 0 ? BundlePair::make_fiber_product(std::move(child), e.right())
                           : BundlePair::make_fiber_product(e.left(), std::move(child));
    case BundleKind::kMorse:
      return BundlePair::make_morse(std::move(child), e.handles());
    default:
      throw std::logic_error("rebuild called on a leaf node");
  }
}

std::vector<BundleRef> shrink_candidates(const BundleRef& e) {
  std::vector<BundleRef> out;
  std::vector<std::pair<int, BundleRef>> children;
  if (e->left()) children.emplace_back(0, e->left());
  if (e->right()) children.emplace_back(1, e->right());

  for (const auto& [position, child] : children) {
    out.push_back(child);
    if (child->kind() != BundleKind::kTrivial) {
      // A trivial bundle with the same statistics is the smallest piece that
      // keeps the surrounding expression well formed.
      out.push_back(rebuild(*e, position, BundlePair::make_trivial(child->stats())));
    }
  }

  if (e->kind() == BundleKind::kMorse && e->handles().size() > 1) {
    for (size_t i = 0; i < e->handles().size(); ++i) {
      auto handles = e->handles();
      handles.erase(handles.begin() + i);
      out.push_back(BundlePair::make_morse(e->base(), std::move(handles)));
    }
  }

  std::vector<VirtualBundle> variants;
  switch (e->kind()) {
    case BundleKind::kSphere:
      bundle_variants(e->bundle(), variants);
      for (auto& v : variants) out.push_back(BundlePair::make_sphere(v, e->sphere_dim()));
      break;
    case BundleKind::kDisk:
      bundle_variants(e->bundle(), variants);
      for (auto& v : variants) out.push_back(BundlePair::make_disk(v));
      break;
    case BundleKind::kRelDisk:
      bundle_variants(e->bundle(), variants);
      for (auto& v : variants) out.push_back(BundlePair::make_rel_disk(v));
      break;
    case BundleKind::kHatcher:
      bundle_variants(e->bundle(), variants);
      for (auto& v : variants) {
        out.push_back(BundlePair::make_hatcher(v, e->hatcher_n(), e->total_rank()));
      }
      break;
    case BundleKind::kMorse:
      for (size_t i = 0; i < e->handles().size(); ++i) {
        const MorseHandle& h = e->handles()[i];
        std::vector<VirtualBundle> negs, poss;
        bundle_variants(h.negative, negs);
        bundle_variants(h.positive, poss);
        for (auto& v : negs) {
          auto handles = e->handles();
          handles[i].negative = v;
          out.push_back(BundlePair::make_morse(e->base(), std::move(handles)));
        }
        for (auto& v : poss) {
          auto handles = e->handles();
          handles[i].positive = v;
          out.push_back(BundlePair::make_morse(e->base(), std::move(handles)));
        }
      }
      break;
    default:
      break;
  }

  for (const auto& [position, child] : children) {
    for (BundleRef& cand : shrink_candidates(child)) {
      out.push_back(rebuild(*e, position, std::move(cand)));
    }
  }
  return out;
}

}  // namespace

BundleRef minimize(BundleRef expr, const std::function<bool(const BundleRef&)>& fails) {
  auto safe_fails = [&fails](const BundleRef& candidate) {
    try {
      return fails(candidate);
    } catch (...) {
      return false;
    }
  };
  if (!safe_fails(expr)) {
    throw InvalidMinimizeCall("minimize requires an expression that fails the check");
  }
  bool progress = true;
  while (progress) {
    progress = false;
    for (BundleRef& candidate : shrink_candidates(expr)) {
      if (safe_fails(candidate)) {
        expr = std::move(candidate);
        progress = true;
        break;
      }
    }
  }
  return expr;
}

// ---------------------------------------------------------------------------
// The check suite

namespace {

enum class Outcome { kInapplicable, kPass, kFail };

struct Evaluation {
  Outcome outcome = Outcome::kInapplicable;
  std::string lhs;
  std::string rhs;
};

struct SampleCheck {
  BundleRef subject;
  std::function<Evaluation(const BundleRef&)> eval;
};

struct CheckDef {
  std::string name;
  std::string identity;
  bool per_theory = true;
  std::function<SampleCheck(ExprGen&, const TorsionTheory&)> sample;
};

Evaluation compare(const GradedClass& lhs, const GradedClass& rhs) {
  return {lhs == rhs ? Outcome::kPass : Outcome::kFail, lhs.str(), rhs.str()};
}

Evaluation compare_all(std::initializer_list<std::pair<GradedClass, GradedClass>> pairs) {
  for (const auto& [lhs, rhs] : pairs) {
    if (!(lhs == rhs)) return {Outcome::kFail, lhs.str(), rhs.str()};
  }
  auto& first = *pairs.begin();
  return {Outcome::kPass, first.first.str(), first.second.str()};
}

std::vector<CheckDef> build_checks(const SuiteOptions& options);

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::vector<CheckReport> run_suite(const SuiteOptions& options) {
  return run_suite(options, default_theories(options.seed, options.k, options.custom_theories));
}

std::vector<CheckReport> run_suite(const SuiteOptions& options,
                                   const std::vector<TorsionTheory>& theories) {
  std::vector<CheckReport> reports;
  for (const CheckDef& def : build_checks(options)) {
    CheckReport report;
    report.name = def.name;
    report.identity = def.identity;
    const std::vector<TorsionTheory> targets =
        def.per_theory ? theories : std::vector<TorsionTheory>{mmm_theory(options.k)};
    int theory_index = 0;
    for (const TorsionTheory& t : targets) {
      GenOptions gen_options;
      gen_options.seed = options.seed ^ fnv1a(def.name) ^ (0x9e3779b97f4a7c15ull * theory_index);
      gen_options.max_depth = options.depth;
      gen_options.roots = {"x", "y", "z"};
      ExprGen gen(std::move(gen_options));
      for (int s = 0; s < options.samples && report.passed; ++s) {
        SampleCheck sc = def.sample(gen, t);
        Evaluation ev;
        try {
          ev = sc.eval(sc.subject);
          if (ev.outcome == Outcome::kInapplicable) {
            ev = {Outcome::kFail, "harness produced an inapplicable subject", ""};
          }
        } catch (const std::exception& ex) {
          ev = {Outcome::kFail, std::string("exception: ") + ex.what(), ""};
        }
        ++report.samples;
        if (ev.outcome == Outcome::kFail) {
          report.passed = false;
          BundleRef minimized = sc.subject;
          try {
            minimized = minimize(sc.subject, [&sc](const BundleRef& c) {
              return sc.eval(c).outcome == Outcome::kFail;
            });
          } catch (const std::exception&) {
          }
          report.lhs = ev.lhs;
          report.rhs = ev.rhs;
          try {
            Evaluation ev2 = sc.eval(minimized);
            if (ev2.outcome == Outcome::kFail) {
              report.lhs = ev2.lhs;
              report.rhs = ev2.rhs;
            }
          } catch (const std::exception&) {
          }
          report.counterexample = "theory T = " + theory_dsl(t) + "; E = " +
                                  dsl_expr(*minimized) + "; query tau(T, E);";
        }
      }
      ++theory_index;
      if (!report.passed) break;
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

bool all_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.passed; });
}

namespace {

std::vector<CheckDef> build_checks(const SuiteOptions& options) {
  const int k = options.k;
  const int depth = options.depth;
  const int inner = std::max(0, depth - 1);
  std::vector<CheckDef> checks;

  checks.push_back(
      {"additivity_union_vs_doubles",
       "tau(E1 u E2) = tau(D E1)/2 + tau(D E2)/2 for pieces glued along their whole vertical "
       "boundary",
       true,
       [inner](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         auto family = g.matched_family(2, inner);
         BundleRef subject = BundlePair::make_union_vertical(family[0], family[1]);
         return {subject, [t](const BundleRef& e) -> Evaluation {
                   if (e->kind() != BundleKind::kUnionVertical) return {};
                   GradedClass lhs = tau(t, *e);
                   GradedClass rhs =
                       (tau(t, *BundlePair::make_double(e->left())) +
                        tau(t, *BundlePair::make_double(e->right())))
                           .scaled(Scalar(Rational(1, 2)));
                   return compare(lhs, rhs);
                 }};
       }});

  checks.push_back(
      {"four_piece_exchange",
       "tau(E1 u E2) + tau(E3 u E4) = tau(E1 u E3) + tau(E2 u E4) for four pieces with a common "
       "vertical boundary",
       true,
       [inner](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         auto family = g.matched_family(4, inner);
         BundleRef subject = BundlePair::make_union_vertical(family[0], family[1]);
         return {subject,
                 [t, e3 = family[2], e4 = family[3]](const BundleRef& e) -> Evaluation {
                   if (e->kind() != BundleKind::kUnionVertical) return {};
                   auto uv = [](BundleRef a, BundleRef b) {
                     return BundlePair::make_union_vertical(std::move(a), std::move(b));
                   };
                   GradedClass lhs = tau(t, *e) + tau(t, *uv(e3, e4));
                   GradedClass rhs =
                       tau(t, *uv(e->left(), e3)) + tau(t, *uv(e->right(), e4));
                   return compare(lhs, rhs);
                 }};
       }});

  checks.push_back(
      {"boundary_additivity",
       "tau(E1 u E2) = tau(E1) + tau(E2) - tau(E1 n E2) in the boundary case",
       true,
       [inner](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         auto family = g.matched_family(2, inner);
         BundleRef subject = BundlePair::make_union_vertical(family[0], family[1]);
         return {subject, [t](const BundleRef& e) -> Evaluation {
                   if (e->kind() != BundleKind::kUnionVertical) return {};
                   GradedClass lhs = tau(t, *e);
                   GradedClass rhs = tau_absolute(t, *e->left()) + tau_absolute(t, *e->right()) -
                                     tau_vertical_boundary(t, *e->right());
                   return compare(lhs, rhs);
                 }};
       }});

  checks.push_back(
      {"relative_additivity",
       "tau(E1 u E2, d0 E1) = tau(E1, d0) + tau(E2, d0) when E1 n E2 = d0 E2, and the absolute "
       "torsions satisfy inclusion-exclusion",
       true,
       [depth](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         BundleRef subject = g.expression(depth);
         for (int attempt = 0; attempt < 32 && subject->kind() != BundleKind::kUnionHandle;
              ++attempt) {
           subject = g.expression(depth);
         }
         if (subject->kind() != BundleKind::kUnionHandle) {
           subject = BundlePair::make_union_handle(
               BundlePair::make_disk(g.bundle(2)),
               BundlePair::make_rel_disk(g.bundle(2)));
         }
         return {subject, [t](const BundleRef& e) -> Evaluation {
                   if (e->kind() != BundleKind::kUnionHandle) return {};
                   return compare_all(
                       {{tau(t, *e), tau(t, *e->left()) + tau(t, *e->right())},
                        {tau_absolute(t, *e),
                         tau_absolute(t, *e->left()) + tau_absolute(t, *e->right()) -
                             tau_d0(t, *e->right())}});
                 }};
       }});

  checks.push_back(
      {"horizontal_additivity",
       "splitting a Morse bundle's handle set laterally splits its torsion, the overlap being a "
       "torsion-free collar",
       true,
       [depth](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         BundleRef subject = g.morse_expression(depth);
         const size_t cut = g.below(subject->handles().size() + 1);
         return {subject, [t, cut](const BundleRef& e) -> Evaluation {
                   if (e->kind() != BundleKind::kMorse) return {};
                   const auto& handles = e->handles();
                   const size_t split = std::min(cut, handles.size());
                   std::vector<MorseHandle> first(handles.begin(), handles.begin() + split);
                   std::vector<MorseHandle> second(handles.begin() + split, handles.end());
                   BundleRef other_base = BundlePair::make_trivial(
                       {e->base()->stats().dim, 0, 0, 0, 0});
                   GradedClass rhs =
                       tau(t, *BundlePair::make_morse(e->base(), std::move(first))) +
                       tau(t, *BundlePair::make_morse(other_base, std::move(second)));
                   return compare(tau(t, *e), rhs);
                 }};
       }});

  checks.push_back(
      {"morse_handle_decomposition",
       "the torsion of a Morse bundle equals the sum of the torsions of its handle bundles "
       "(D(xi), S(xi)) x D(eta)",
       true,
       [depth](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         BundleRef subject = g.morse_expression(depth);
         return {subject, [t](const BundleRef& e) -> Evaluation {
                   if (e->kind() != BundleKind::kMorse) return {};
                   GradedClass rhs(4 * t.k);
                   for (const MorseHandle& h : e->handles()) {
                     if (h.index == 0) {
                       rhs += tau(t, *BundlePair::make_disk(h.positive));
                     } else {
                       rhs += tau(t, *BundlePair::make_fiber_product(
                                         BundlePair::make_rel_disk(h.negative),
                                         BundlePair::make_disk(h.positive)));
                     }
                   }
                   return compare(tau(t, *e), rhs);
                 }};
       }});

  checks.push_back(
      {"sphere_assembly",
       "capping a disk bundle with its relative disk bundle gives the sphere bundle of xi + R",
       true,
       [](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         VirtualBundle xi = g.any_bundle(1, 4);
         BundleRef subject = BundlePair::make_union_handle(BundlePair::make_disk(xi),
                                                           BundlePair::make_rel_disk(xi));
         return {subject, [t](const BundleRef& e) -> Evaluation {
                   if (e->kind() != BundleKind::kUnionHandle ||
                       e->left()->kind() != BundleKind::kDisk ||
                       e->right()->kind() != BundleKind::kRelDisk ||
                       !(e->left()->bundle() == e->right()->bundle())) {
                     return {};
                   }
                   const VirtualBundle& xi = e->left()->bundle();
                   const int n = xi.real_rank();
                   GradedClass rhs =
                       tau(t, *BundlePair::make_sphere(xi + VirtualBundle::trivial(1), n));
                   return compare(tau(t, *e), rhs);
                 }};
       }});

  checks.push_back(
      {"double_of_disk_is_sphere",
       "the fiberwise double of a disk bundle is the sphere bundle of xi + R",
       true,
       [](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         BundleRef subject = BundlePair::make_double(BundlePair::make_disk(g.any_bundle(1, 4)));
         return {subject, [t](const BundleRef& e) -> Evaluation {
                   if (e->kind() != BundleKind::kDouble ||
                       e->child()->kind() != BundleKind::kDisk) {
                     return {};
                   }
                   const VirtualBundle& xi = e->child()->bundle();
                   const int n = xi.real_rank();
                   if (n < 1) return {};
                   GradedClass rhs =
                       tau(t, *BundlePair::make_sphere(xi + VirtualBundle::trivial(1), n));
                   return compare(tau(t, *e), rhs);
                 }};
       }});

  checks.push_back(
      {"transfer_axiom_pullback",
       "tau_B(E x S(xi)) = chi(S^m) tau(E) + tr(tau_E(S(xi))) for sphere bundles pulled back "
       "from the base",
       true,
       [inner](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         BundleRef subject = g.expression(inner);
         const int m = g.range(1, 4);
         VirtualBundle xi = g.any_bundle(m + 1, m + 1);
         return {subject, [t, m, xi](const BundleRef& e) -> Evaluation {
                   BundleRef sphere = BundlePair::make_sphere(xi, m);
                   GradedClass lhs = tau(t, *BundlePair::make_fiber_product(e, sphere));
                   const int chi_sphere = 1 + parity_sign(m);
                   GradedClass rhs = tau(t, *e).scaled(Scalar(chi_sphere)) +
                                     transfer_pullback(*e, tau(t, *sphere));
                   return compare(lhs, rhs);
                 }};
       }});

  checks.push_back(
      {"product_formula_symmetry",
       "the fiber product formula is symmetric and associative",
       true,
       [inner](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         BundleRef a = g.expression(inner);
         BundleRef b = g.expression(inner);
         BundleRef c = g.expression(std::max(0, inner - 1));
         BundleRef subject = BundlePair::make_fiber_product(a, b);
         return {subject, [t, c](const BundleRef& e) -> Evaluation {
                   if (e->kind() != BundleKind::kFiberProduct) return {};
                   auto prod = [](BundleRef x, BundleRef y) {
                     return BundlePair::make_fiber_product(std::move(x), std::move(y));
                   };
                   return compare_all(
                       {{tau(t, *e), tau(t, *prod(e->right(), e->left()))},
                        {tau(t, *prod(e, c)), tau(t, *prod(e->left(), prod(e->right(), c)))}});
                 }};
       }});

  checks.push_back(
      {"product_disk_splitting",
       "D(xi1) x_B D(xi2) and D(xi1 + xi2) have equal torsion",
       true,
       [](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         BundleRef subject =
             BundlePair::make_fiber_product(BundlePair::make_disk(g.any_bundle(1, 3)),
                                            BundlePair::make_disk(g.any_bundle(1, 3)));
         return {subject, [t](const BundleRef& e) -> Evaluation {
                   if (e->kind() != BundleKind::kFiberProduct ||
                       e->left()->kind() != BundleKind::kDisk ||
                       e->right()->kind() != BundleKind::kDisk) {
                     return {};
                   }
                   GradedClass rhs = tau(
                       t, *BundlePair::make_disk(e->left()->bundle() + e->right()->bundle()));
                   return compare(tau(t, *e), rhs);
                 }};
       }});

  checks.push_back(
      {"stability",
       "tau(E x D^n) = tau(E) for trivial disk bundles",
       true,
       [depth](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         BundleRef subject = g.expression(depth);
         const int n = g.range(1, 3);
         return {subject, [t, n](const BundleRef& e) -> Evaluation {
                   GradedClass lhs = tau(t, *BundlePair::make_fiber_product(
                                                e, BundlePair::make_disk(
                                                       VirtualBundle::trivial(n))));
                   return compare(lhs, tau(t, *e));
                 }};
       }});

  checks.push_back(
      {"vertical_boundary_stability",
       "tau(dv E) = tau(dv (E x D^2))",
       true,
       [inner](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         BundleRef subject = g.boundary_piece(inner);
         return {subject, [t](const BundleRef& e) -> Evaluation {
                   if (e->stats().dim < 1) return {};
                   GradedClass lhs = tau(t, *BundlePair::make_vertical_boundary(e));
                   GradedClass rhs = tau(t, *BundlePair::make_vertical_boundary(
                                                BundlePair::make_fiber_product(
                                                    e, BundlePair::make_disk(
                                                           VirtualBundle::trivial(2)))));
                   return compare(lhs, rhs);
                 }};
       }});

  checks.push_back(
      {"duality_exercise",
       "tau(E, d0) + (-1)^n tau(E, d1) = 2 tau_even(E, d0), swapping each handle (i, xi, eta) "
       "for (n-i, eta, xi)",
       true,
       [depth](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         BundleRef subject = g.morse_expression(depth);
         return {subject, [t](const BundleRef& e) -> Evaluation {
                   if (e->kind() != BundleKind::kMorse) return {};
                   const FiberStats& s = e->stats();
                   const int n = s.dim;
                   std::vector<MorseHandle> swapped;
                   for (const MorseHandle& h : e->handles()) {
                     swapped.push_back({n - h.index, h.positive, h.negative});
                   }
                   BundleRef dual_base =
                       BundlePair::make_trivial({n - 1, s.chi1, s.corner, 0, 0});
                   BundleRef dual = BundlePair::make_morse(dual_base, std::move(swapped));
                   GradedClass lhs =
                       tau(t, *e) + tau(t, *dual).scaled(Scalar(parity_sign(n)));
                   GradedClass rhs = tau(even_part(t), *e).scaled(Scalar(2));
                   return compare(lhs, rhs);
                 }};
       }});

  checks.push_back(
      {"hatcher_closed_form",
       "tau of the Hatcher bundle equals (-1)^{n+1} 2 s1 ch4k(xi), via the two-handle Morse sum",
       true,
       [](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         const int n = g.range(2, 6);
         BundleRef subject = BundlePair::make_hatcher(g.bundle(n), n, n + g.range(1, 4));
         return {subject, [t](const BundleRef& e) -> Evaluation {
                   if (e->kind() != BundleKind::kHatcher) return {};
                   GradedClass rhs = ch4k(e->bundle(), t.k)
                                         .scaled(Scalar(2 * parity_sign(e->hatcher_n() + 1)) *
                                                 t.s1);
                   return compare(tau(t, *e), rhs);
                 }};
       }});

  checks.push_back(
      {"hatcher_mmm_vanishes",
       "Miller-Morita-Mumford torsion vanishes on Hatcher bundles (s1 = 0)",
       false,
       [k](ExprGen& g, const TorsionTheory&) -> SampleCheck {
         const int n = g.range(2, 6);
         BundleRef subject = BundlePair::make_hatcher(g.bundle(n), n, n + g.range(1, 4));
         return {subject, [k](const BundleRef& e) -> Evaluation {
                   if (e->kind() != BundleKind::kHatcher) return {};
                   GradedClass zero(4 * k);
                   return compare_all({{tau(mmm_theory(k), *e), zero},
                                       {m2k_direct(*e, k), zero}});
                 }};
       }});

  checks.push_back(
      {"uniqueness_difference_torsion",
       "the difference torsion tau - a tau_fr - b tau_mmm vanishes identically for every "
       "decomposable theory",
       true,
       [depth](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         BundleRef subject = g.expression(depth);
         return {subject, [t](const BundleRef& e) -> Evaluation {
                   return compare(difference_torsion(t, *e), GradedClass(4 * t.k));
                 }};
       }});

  checks.push_back(
      {"mmm_parity",
       "Miller-Morita-Mumford torsion is even: its odd part vanishes everywhere and it vanishes "
       "on closed odd-dimensional fibers",
       false,
       [k, depth](ExprGen& g, const TorsionTheory&) -> SampleCheck {
         BundleRef subject = g.closed_expression(depth);
         for (int attempt = 0; attempt < 32 && subject->stats().dim % 2 == 0; ++attempt) {
           subject = g.closed_expression(depth);
         }
         if (subject->stats().dim % 2 == 0) {
           subject = BundlePair::make_sphere(g.bundle(2), 1);
         }
         return {subject, [k](const BundleRef& e) -> Evaluation {
                   if (e->stats().dim % 2 == 0 || !certified_closed(*e)) return {};
                   GradedClass zero(4 * k);
                   return compare_all({{tau(mmm_theory(k), *e), zero},
                                       {tau_odd(mmm_theory(k), *e), zero}});
                 }};
       }});

  checks.push_back(
      {"fr_even_proportionality",
       "on closed even-dimensional fibers the FR theory equals (-1)^k z_{2k+1} / (2 (2k)!) times "
       "the Miller-Morita-Mumford theory",
       false,
       [k, depth](ExprGen& g, const TorsionTheory&) -> SampleCheck {
         BundleRef subject = g.closed_expression(depth);
         for (int attempt = 0; attempt < 32 && subject->stats().dim % 2 == 1; ++attempt) {
           subject = g.closed_expression(depth);
         }
         if (subject->stats().dim % 2 == 1) {
           subject = BundlePair::make_sphere(g.bundle(3), 2);
         }
         return {subject, [k](const BundleRef& e) -> Evaluation {
                   if (e->stats().dim % 2 == 1 || !certified_closed(*e)) return {};
                   Scalar c = Scalar(parity_sign(k)) * Scalar::zeta(2 * k + 1) *
                              Scalar(Rational(1, 2)) *
                              Scalar(1).div_exact(factorial(2 * k));
                   return compare(tau(fr_theory(k), *e), tau(mmm_theory(k), *e).scaled(c));
                 }};
       }});

  checks.push_back(
      {"m2k_cross_validation",
       "the direct transfer computation of M_2k agrees with the torsion evaluator at "
       "(s1, s2) = (0, (2k)!)",
       false,
       [k, depth](ExprGen& g, const TorsionTheory&) -> SampleCheck {
         BundleRef subject = g.expression(depth);
         return {subject, [k](const BundleRef& e) -> Evaluation {
                   return compare(m2k_direct(*e, k), tau(mmm_theory(k), *e));
                 }};
       }});

  checks.push_back(
      {"transfer_identities",
       "tr^{(E,d0)} y = tr^E y - tr^{d0 E} y and tr^{(E,d1)} y = (-1)^n tr^{(E,d0)} y on "
       "pullback classes, plus transfer additivity over vertical unions",
       false,
       [k, depth, inner](ExprGen& g, const TorsionTheory&) -> SampleCheck {
         BundleRef subject = g.expression(depth);
         GradedClass y = ch4k(VirtualBundle::line("x") + g.bundle(g.range(0, 3)), k);
         auto family = g.matched_family(2, inner);
         return {subject, [y, family](const BundleRef& e) -> Evaluation {
                   TransferIdentities ids = relative_transfer_identities(*e, y);
                   BundleRef uv = BundlePair::make_union_vertical(family[0], family[1]);
                   GradedClass lhs_uv = transfer_absolute(*uv, y);
                   GradedClass rhs_uv =
                       transfer_absolute(*family[0], y) + transfer_absolute(*family[1], y) -
                       y.scaled(Scalar(family[0]->stats().chi_boundary()));
                   return compare_all({{ids.relative, ids.total_minus_d0},
                                       {ids.dual, ids.dual_expected},
                                       {lhs_uv, rhs_uv}});
                 }};
       }});

  checks.push_back(
      {"handle_order_invariance",
       "the torsion of a Morse bundle does not depend on the order of its handles",
       true,
       [depth](ExprGen& g, const TorsionTheory& t) -> SampleCheck {
         BundleRef subject = g.morse_expression(depth);
         return {subject, [t](const BundleRef& e) -> Evaluation {
                   if (e->kind() != BundleKind::kMorse) return {};
                   auto handles = e->handles();
                   std::reverse(handles.begin(), handles.end());
                   BundleRef reversed = BundlePair::make_morse(e->base(), std::move(handles));
                   return compare(tau(t, *e), tau(t, *reversed));
                 }};
       }});

  checks.push_back(
      {"mmm_stability",
       "M_2k(E x D^n) = M_2k(E) through the direct transfer computation",
       false,
       [k, depth](ExprGen& g, const TorsionTheory&) -> SampleCheck {
         BundleRef subject = g.expression(depth);
         const int n = g.range(1, 3);
         return {subject, [k, n](const BundleRef& e) -> Evaluation {
                   GradedClass lhs = m2k_direct(
                       *BundlePair::make_fiber_product(
                           e, BundlePair::make_disk(VirtualBundle::trivial(n))),
                       k);
                   return compare(lhs, m2k_direct(*e, k));
                 }};
       }});

  checks.push_back(
      {"generator_soundness",
       "every generated expression is well formed and evaluable",
       false,
       [depth](ExprGen& g, const TorsionTheory&) -> SampleCheck {
         BundleRef subject = g.expression(depth);
         return {subject, [](const BundleRef& e) -> Evaluation {
                   auto diagnostics = validate(*e);
                   if (!diagnostics.empty()) {
                     return {Outcome::kFail,
                             diagnostics.front().path + ": " + diagnostics.front().message,
                             "well-formed"};
                   }
                   if (!torsion_evaluable(*e)) {
                     return {Outcome::kFail, "expression is not evaluable", "evaluable"};
                   }
                   return {Outcome::kPass, "well-formed", "well-formed"};
                 }};
       }});

  return checks;
}

}  // namespace

}  // namespace torscalc

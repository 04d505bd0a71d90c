// Acceptance suite: exact-arithmetic checks, one pass/fail line each.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "torscalc/script.hpp"
#include "torscalc/verify.hpp"

using namespace torscalc;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

GradedClass xpow(int exponent, Scalar coefficient) {
  return GradedClass::term({{"x", exponent}}, std::move(coefficient));
}

BundleRef sphere_of_line(int n) {
  return BundlePair::make_sphere(VirtualBundle::line("x") + VirtualBundle::trivial(n - 1), n);
}

bool sphere_values(std::string& detail) {
  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 6; ++n) {
      GradedClass value = tau(fr_theory(k), *sphere_of_line(n));
      Scalar coefficient = Scalar(parity_sign(k + n)) * Scalar::zeta(2 * k + 1) *
                           Scalar(1).div_exact(factorial(2 * k));
      if (!(value == xpow(2 * k, coefficient))) {
        detail = "fr(" + std::to_string(k) + ") on S^" + std::to_string(n) + " gave " +
                 value.str();
        return false;
      }
      GradedClass mmm_value = tau(mmm_theory(k), *sphere_of_line(n));
      GradedClass mmm_expected =
          n % 2 == 0 ? xpow(2 * k, Scalar(2)) : GradedClass(4 * k);
      if (!(mmm_value == mmm_expected)) {
        detail = "mmm(" + std::to_string(k) + ") on S^" + std::to_string(n) + " gave " +
                 mmm_value.str();
        return false;
      }
    }
  }
  return true;
}

std::vector<CheckReport> run_full_suite(int k, int samples, int depth) {
  SuiteOptions options;
  options.seed = 20240517 + static_cast<std::uint64_t>(k);
  options.depth = depth;
  options.samples = samples;
  options.k = k;
  options.custom_theories = 10;
  return run_suite(options);
}

bool checks_pass(const std::vector<std::vector<CheckReport>>& suites,
                 const std::set<std::string>& names, std::string& detail) {
  std::set<std::string> seen;
  for (const auto& reports : suites) {
    for (const CheckReport& report : reports) {
      if (names.count(report.name) == 0) continue;
      seen.insert(report.name);
      if (!report.passed) {
        detail = report.name + " failed; counterexample: " + report.counterexample +
                 " lhs=" + report.lhs + " rhs=" + report.rhs;
        return false;
      }
      if (report.samples < 200) {
        detail = report.name + " ran only " + std::to_string(report.samples) + " samples";
        return false;
      }
    }
  }
  if (seen.size() != names.size()) {
    detail = "missing checks";
    return false;
  }
  return true;
}

bool hatcher_values(std::string& detail) {
  ExprGen gen(617, 2, {"x", "y"});
  for (int i = 0; i < 20; ++i) {
    TorsionTheory t = gen.random_theory(1 + static_cast<int>(gen.below(2)));
    for (int n = 2; n <= 6; ++n) {
      VirtualBundle xi = gen.bundle(n);
      auto e = BundlePair::make_hatcher(xi, n, n + static_cast<int>(gen.below(4)) + 1);
      GradedClass expected = ch4k(xi, t.k).scaled(Scalar(2 * parity_sign(n + 1)) * t.s1);
      if (!(tau(t, *e) == expected)) {
        detail = "generic theory on hatcher n=" + std::to_string(n);
        return false;
      }
      if (!tau(mmm_theory(t.k), *e).is_zero()) {
        detail = "mmm does not vanish on hatcher n=" + std::to_string(n);
        return false;
      }
    }
  }
  return true;
}

bool mmm_parity_explicit(std::string& detail) {
  ExprGen gen(619, 4, {"x", "y"});
  for (int i = 0; i < 200; ++i) {
    BundleRef e = gen.expression();
    if (!tau_odd(mmm_theory(1), *e).is_zero() || !tau_odd(mmm_theory(2), *e).is_zero()) {
      detail = "odd part of mmm nonzero on " + dsl_expr(*e);
      return false;
    }
  }
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + 2 * static_cast<int>(gen.below(3));
    auto e = BundlePair::make_sphere(gen.bundle(n + 1), n);
    if (!tau(mmm_theory(1), *e).is_zero()) {
      detail = "mmm nonzero on a closed odd sphere bundle";
      return false;
    }
  }
  return true;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool golden_scripts(std::string& detail) {
  const std::string base = TORSCALC_SOURCE_DIR;
  const char* names[] = {"sphere_torsion", "hatcher", "morse_handles", "disk_product",
                         "complement_cancellation"};
  for (const char* name : names) {
    std::string script = slurp(base + "/scripts/" + std::string(name) + ".tors");
    std::string golden = slurp(base + "/tests/golden/" + std::string(name) + ".golden");
    std::string out = run_text(script);
    if (out != golden) {
      detail = std::string(name) + " differs:\n" + out;
      return false;
    }
  }
  ExprGen gen(631, 3, {"x", "y", "z"});
  for (int i = 0; i < 500; ++i) {
    std::string text = "root x;\nroot y;\nroot z;\n";
    text += "vb a = " + gen.any_bundle(1, 4).str() + ";\n";
    text += "E0 = " + dsl_expr(*gen.expression()) + ";\n";
    text += "theory T = " + theory_dsl(gen.random_theory(1)) + ";\n";
    text += "query tau(T, E0);\nquery chi(E0);\n";
    Script script = parse_script(text);
    std::string printed = print_script(script);
    if (!(parse_script(printed) == script)) {
      detail = "round-trip failed on generated script " + std::to_string(i);
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();

  // One suite run per degree parameter; several criteria read from these.
  std::vector<std::vector<CheckReport>> suites;
  suites.push_back(run_full_suite(1, 200, 4));
  suites.push_back(run_full_suite(2, 200, 4));

  const std::set<std::string> axiom_checks = {
      "additivity_union_vs_doubles", "four_piece_exchange",     "boundary_additivity",
      "relative_additivity",         "horizontal_additivity",   "morse_handle_decomposition",
      "sphere_assembly",             "double_of_disk_is_sphere", "transfer_axiom_pullback",
      "product_formula_symmetry",    "product_disk_splitting",  "stability",
      "vertical_boundary_stability", "duality_exercise",        "handle_order_invariance"};

  std::vector<Criterion> criteria = {
      {"sphere-bundle values", sphere_values},
      {"axiom suite",
       [&suites, &axiom_checks](std::string& detail) {
         return checks_pass(suites, axiom_checks, detail);
       }},
      {"uniqueness of decomposable theories",
       [&suites](std::string& detail) {
         return checks_pass(suites, {"uniqueness_difference_torsion"}, detail);
       }},
      {"even-fiber proportionality",
       [&suites](std::string& detail) {
         return checks_pass(suites, {"fr_even_proportionality"}, detail);
       }},
      {"hatcher bundle torsion", hatcher_values},
      {"transfer cross-validation",
       [&suites](std::string& detail) {
         return checks_pass(suites,
                            {"m2k_cross_validation", "mmm_stability", "transfer_identities"},
                            detail);
       }},
      {"parity",
       [&suites](std::string& detail) {
         return checks_pass(suites, {"mmm_parity"}, detail) && mmm_parity_explicit(detail);
       }},
      {"command line golden outputs and round-trip", golden_scripts},
  };

  bool all = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool passed = false;
    try {
      passed = criteria[i].run(detail);
    } catch (const std::exception& err) {
      detail = std::string("exception: ") + err.what();
    }
    all &= passed;
    std::cout << "criterion " << (i + 1) << " (" << criteria[i].name
              << "): " << (passed ? "PASS" : "FAIL");
    if (!passed) std::cout << " -- " << detail;
    std::cout << "\n";
  }

  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  std::cout << (all ? "acceptance: all criteria passed" : "acceptance: FAILURES above") << " ("
            << elapsed.count() << " ms)\n";
  return all ? 0 : 1;
}

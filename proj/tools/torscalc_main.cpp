#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "torscalc/script.hpp"
#include "torscalc/verify.hpp"

namespace {

int run_statements(const std::string& text) {
  try {
    std::cout << torscalc::run_text(text);
  } catch (const torscalc::ParseError& err) {
    std::cerr << "parse error: " << err.what() << "\n";
    return 1;
  } catch (const torscalc::SemanticError& err) {
    std::cerr << "semantic error: " << err.what() << "\n";
    return 1;
  } catch (const torscalc::ScriptError& err) {
    std::cerr << "evaluation error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "evaluation error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}

int run_verify(const torscalc::SuiteOptions& options, bool records) {
  auto reports = torscalc::run_suite(options);
  if (records) {
    for (const torscalc::CheckReport& report : reports) {
      nlohmann::json record = {
          {"name", report.name},
          {"identity", report.identity},
          {"samples", report.samples},
          {"status", report.passed ? "pass" : "fail"},
      };
      if (!report.passed) {
        record["counterexample"] = report.counterexample;
        record["lhs"] = report.lhs;
        record["rhs"] = report.rhs;
      }
      std::cout << record.dump() << "\n";
    }
  } else {
    for (const torscalc::CheckReport& report : reports) {
      std::cout << (report.passed ? "PASS " : "FAIL ") << report.name
                << " (samples=" << report.samples << "): " << report.identity << "\n";
      if (!report.passed) {
        std::cout << "  counterexample: " << report.counterexample << "\n";
        std::cout << "  lhs: " << report.lhs << "\n";
        std::cout << "  rhs: " << report.rhs << "\n";
      }
    }
  }
  return torscalc::all_passed(reports) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torscalc - exact calculator for higher torsion invariants of smooth bundles"};
  app.require_subcommand(1);

  std::string file;
  CLI::App* run = app.add_subcommand("run", "execute a script file");
  run->add_option("file", file, "script file")->required()->check(CLI::ExistingFile);

  std::string statements;
  CLI::App* eval = app.add_subcommand("eval", "execute statements from the command line");
  eval->add_option("-e,--statements", statements, "semicolon-separated statements")->required();

  torscalc::SuiteOptions options;
  options.depth = 3;
  options.samples = 50;
  bool records = false;
  CLI::App* verify = app.add_subcommand("verify", "run the identity verification suite");
  verify->add_option("--seed", options.seed, "generator seed")->capture_default_str();
  verify->add_option("--depth", options.depth, "maximum expression depth")
      ->check(CLI::Range(0, 8))
      ->capture_default_str();
  verify->add_option("--samples", options.samples, "samples per check and theory")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--k", options.k, "degree parameter (torsion lives in degree 4k)")
      ->check(CLI::Range(1, 6))
      ->capture_default_str();
  verify->add_option("--theories", options.custom_theories, "number of random custom theories")
      ->check(CLI::Range(0, 64))
      ->capture_default_str();
  verify->add_flag("--records", records, "emit one machine-readable record per check");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    std::ifstream in(file);
    if (!in) {
      std::cerr << "cannot open " << file << "\n";
      return 1;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return run_statements(buffer.str());
  }
  if (eval->parsed()) {
    return run_statements(statements);
  }
  return run_verify(options, records);
}

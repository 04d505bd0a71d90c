#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "torscalc/torsion.hpp"
#include "torscalc/transfer.hpp"

namespace torscalc {

struct SourcePos {
  int line = 1;
  int col = 1;
};

class ScriptError : public std::runtime_error {
 public:
  ScriptError(SourcePos pos, const std::string& message)
      : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " +
                           message),
        pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

class ParseError : public ScriptError {
 public:
  using ScriptError::ScriptError;
};

class SemanticError : public ScriptError {
 public:
  using ScriptError::ScriptError;
};

class EvalError : public ScriptError {
 public:
  using ScriptError::ScriptError;
};

/// One summand of a bundle declaration: line(x), trivial(n),
/// complement(sum, total) or a reference to a declared bundle.
struct VbTerm {
  enum class Kind { kLine, kTrivial, kComplement, kRef };
  Kind kind = Kind::kTrivial;
  std::string name;           // root for kLine, bundle name for kRef
  int number = 0;             // rank for kTrivial, total rank for kComplement
  std::vector<VbTerm> inner;  // complement argument

  friend bool operator==(const VbTerm&, const VbTerm&) = default;
};
using VbExpr = std::vector<VbTerm>;

/// Surface form of a bundle-pair expression, 1:1 with the BundlePair
/// constructors plus name references.
struct PairExpr {
  enum class Kind {
    kRef,
    kTrivial,
    kSphere,
    kDisk,
    kRelDisk,
    kDouble,
    kDv,
    kUnion,
    kGlue,
    kProd,
    kMorse,
    kHatcher,
  };
  struct Handle {
    int index = 0;
    VbExpr negative;
    VbExpr positive;
    friend bool operator==(const Handle&, const Handle&) = default;
  };

  Kind kind = Kind::kRef;
  std::string name;                // kRef
  FiberStats stats;                // kTrivial
  VbExpr bundle;                   // sphere/disk/reldisk/hatcher
  int n = 0;                       // sphere/hatcher
  int total = 0;                   // hatcher
  std::vector<PairExpr> children;  // unary/binary constructors; morse base
  std::vector<Handle> handles;     // morse

  friend bool operator==(const PairExpr&, const PairExpr&) = default;
};

struct TheoryExpr {
  enum class Kind { kRef, kFr, kMmm, kCustom };
  Kind kind = Kind::kRef;
  std::string name;  // kRef
  int k = 1;
  Scalar s1;
  Scalar s2;

  friend bool operator==(const TheoryExpr&, const TheoryExpr&) = default;
};

struct Query {
  enum class Kind { kTau, kTauEven, kTauOdd, kTdelta, kM2k, kChi, kTransfer };
  Kind kind = Kind::kTau;
  TheoryExpr theory;
  PairExpr pair;
  int k = 1;                  // m2k
  GradedClass pullback;       // transfer

  friend bool operator==(const Query&, const Query&) = default;
};

struct Statement {
  enum class Kind { kRoot, kVb, kPair, kTheory, kQuery };
  Kind kind = Kind::kRoot;
  SourcePos pos;
  std::string name;
  VbExpr vb;
  PairExpr pair;
  TheoryExpr theory;
  Query query;

  // Positions are ignored so reprinted scripts compare equal.
  friend bool operator==(const Statement& a, const Statement& b) {
    return a.kind == b.kind && a.name == b.name && a.vb == b.vb && a.pair == b.pair &&
           a.theory == b.theory && a.query == b.query;
  }
};

struct Script {
  std::vector<Statement> statements;

  friend bool operator==(const Script&, const Script&) = default;
};

/// Parses the line-oriented statement grammar; see the README for the full
/// grammar. Throws ParseError with a source location.
Script parse_script(std::string_view text);

/// Canonical text; parse(print(parse(s))) == parse(s).
std::string print_script(const Script& script);

/// Executes the script and returns one output line per query. Throws
/// SemanticError for undefined names, redefinitions and malformed
/// expressions, EvalError when a query cannot be evaluated.
std::string run_script(const Script& script);

std::string run_text(std::string_view text);

}  // namespace torscalc

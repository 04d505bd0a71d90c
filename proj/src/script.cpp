#include "torscalc/script.hpp"

#include <cctype>
#include <map>

namespace torscalc {

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Type { kIdent, kInt, kPunct, kEnd };
  Type type = Type::kEnd;
  std::string text;
  long long value = 0;
  char punct = 0;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    for (;;) {
      skip_space_and_comments();
      if (at_end()) break;
      tokens.push_back(next_token());
    }
    tokens.push_back({Token::Type::kEnd, "", 0, 0, pos_});
    return tokens;
  }

 private:
  bool at_end() const { return index_ >= text_.size(); }
  char peek() const { return text_[index_]; }

  char advance() {
    char c = text_[index_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.col = 1;
    } else {
      ++pos_.col;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token next_token() {
    SourcePos start = pos_;
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string text;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        text += advance();
      }
      return {Token::Type::kIdent, std::move(text), 0, 0, start};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string text;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
      long long value = 0;
      try {
        value = std::stoll(text);
      } catch (const std::exception&) {
        throw ParseError(start, "integer literal out of range: " + text);
      }
      return {Token::Type::kInt, std::move(text), value, 0, start};
    }
    static const std::string punct = ";=(),[]+-*/^";
    if (punct.find(c) != std::string::npos) {
      advance();
      return {Token::Type::kPunct, std::string(1, c), 0, c, start};
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  size_t index_ = 0;
  SourcePos pos_;
};

bool is_zeta_ident(const std::string& text) {
  if (text.size() < 2 || text[0] != 'z') return false;
  for (size_t i = 1; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  Script parse() {
    Script script;
    while (!at(Token::Type::kEnd)) {
      script.statements.push_back(statement());
    }
    return script;
  }

 private:
  const Token& peek(int offset = 0) const {
    size_t i = index_ + offset;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  bool at(Token::Type type) const { return peek().type == type; }
  bool at_punct(char c) const { return peek().type == Token::Type::kPunct && peek().punct == c; }
  bool at_ident(std::string_view text) const {
    return peek().type == Token::Type::kIdent && peek().text == text;
  }

  Token take() { return tokens_[index_ < tokens_.size() - 1 ? index_++ : index_]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string got = t.type == Token::Type::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.pos, "expected " + expected + ", got " + got);
  }

  void expect_punct(char c) {
    if (!at_punct(c)) fail(std::string("'") + c + "'");
    take();
  }

  std::string expect_ident(const std::string& what) {
    if (!at(Token::Type::kIdent)) fail(what);
    return take().text;
  }

  void expect_keyword(std::string_view word) {
    if (!at_ident(word)) fail("'" + std::string(word) + "'");
    take();
  }

  int expect_int(const std::string& what) {
    bool negative = false;
    if (at_punct('-')) {
      take();
      negative = true;
    }
    if (!at(Token::Type::kInt)) fail(what);
    long long value = take().value;
    return static_cast<int>(negative ? -value : value);
  }

  int keyword_int(std::string_view word) {
    expect_keyword(word);
    expect_punct('=');
    return expect_int("an integer");
  }

  Statement statement() {
    Statement stmt;
    stmt.pos = peek().pos;
    if (at_ident("root")) {
      take();
      stmt.kind = Statement::Kind::kRoot;
      stmt.name = expect_ident("a root name");
    } else if (at_ident("vb")) {
      take();
      stmt.kind = Statement::Kind::kVb;
      stmt.name = expect_ident("a bundle name");
      expect_punct('=');
      stmt.vb = vb_expr();
    } else if (at_ident("theory")) {
      take();
      stmt.kind = Statement::Kind::kTheory;
      stmt.name = expect_ident("a theory name");
      expect_punct('=');
      stmt.theory = theory_expr();
    } else if (at_ident("query")) {
      take();
      stmt.kind = Statement::Kind::kQuery;
      stmt.query = query();
    } else if (at(Token::Type::kIdent)) {
      stmt.kind = Statement::Kind::kPair;
      stmt.name = take().text;
      expect_punct('=');
      stmt.pair = pair_expr();
    } else {
      fail("a statement");
    }
    expect_punct(';');
    return stmt;
  }

  VbExpr vb_expr() {
    VbExpr expr;
    expr.push_back(vb_term());
    while (at_punct('+')) {
      take();
      expr.push_back(vb_term());
    }
    return expr;
  }

  VbTerm vb_term() {
    VbTerm term;
    if (at_ident("line")) {
      take();
      expect_punct('(');
      term.kind = VbTerm::Kind::kLine;
      term.name = expect_ident("a root name");
      expect_punct(')');
    } else if (at_ident("trivial")) {
      take();
      expect_punct('(');
      term.kind = VbTerm::Kind::kTrivial;
      term.number = expect_int("a rank");
      expect_punct(')');
    } else if (at_ident("complement")) {
      take();
      expect_punct('(');
      term.kind = VbTerm::Kind::kComplement;
      term.inner = vb_expr();
      expect_punct(',');
      term.number = expect_int("a total rank");
      expect_punct(')');
    } else if (at(Token::Type::kIdent)) {
      term.kind = VbTerm::Kind::kRef;
      term.name = take().text;
    } else {
      fail("a bundle term");
    }
    return term;
  }

  VbExpr vb_handle_arg() {
    if (at(Token::Type::kInt) && peek().value == 0) {
      take();
      return {};  // the zero bundle
    }
    return vb_expr();
  }

  PairExpr pair_expr() {
    PairExpr expr;
    if (!at(Token::Type::kIdent)) fail("a bundle pair expression");
    const std::string head = peek().text;
    if (head == "trivial") {
      take();
      expect_punct('(');
      expr.kind = PairExpr::Kind::kTrivial;
      expr.stats.dim = keyword_int("dim");
      expect_punct(',');
      expr.stats.chi = keyword_int("chi");
      while (at_punct(',')) {
        take();
        if (at_ident("chi0")) {
          expr.stats.chi0 = keyword_int("chi0");
        } else if (at_ident("chi1")) {
          expr.stats.chi1 = keyword_int("chi1");
        } else if (at_ident("corner")) {
          expr.stats.corner = keyword_int("corner");
        } else {
          fail("'chi0', 'chi1' or 'corner'");
        }
      }
      expect_punct(')');
    } else if (head == "sphere") {
      take();
      expect_punct('(');
      expr.kind = PairExpr::Kind::kSphere;
      expr.bundle = vb_expr();
      expect_punct(',');
      expr.n = keyword_int("n");
      expect_punct(')');
    } else if (head == "disk" || head == "reldisk") {
      take();
      expect_punct('(');
      expr.kind = head == "disk" ? PairExpr::Kind::kDisk : PairExpr::Kind::kRelDisk;
      expr.bundle = vb_expr();
      expect_punct(')');
    } else if (head == "double" || head == "dv") {
      take();
      expect_punct('(');
      expr.kind = head == "double" ? PairExpr::Kind::kDouble : PairExpr::Kind::kDv;
      expr.children.push_back(pair_expr());
      expect_punct(')');
    } else if (head == "union" || head == "glue" || head == "prod") {
      take();
      expect_punct('(');
      expr.kind = head == "union"  ? PairExpr::Kind::kUnion
                  : head == "glue" ? PairExpr::Kind::kGlue
                                   : PairExpr::Kind::kProd;
      expr.children.push_back(pair_expr());
      expect_punct(',');
      expr.children.push_back(pair_expr());
      expect_punct(')');
    } else if (head == "morse") {
      take();
      expect_punct('(');
      expr.kind = PairExpr::Kind::kMorse;
      expect_keyword("base");
      expect_punct('=');
      expr.children.push_back(pair_expr());
      expect_punct(',');
      expect_keyword("handles");
      expect_punct('=');
      expect_punct('[');
      for (;;) {
        expect_punct('(');
        PairExpr::Handle handle;
        handle.index = expect_int("a handle index");
        expect_punct(',');
        handle.negative = vb_handle_arg();
        expect_punct(',');
        handle.positive = vb_handle_arg();
        expect_punct(')');
        expr.handles.push_back(std::move(handle));
        if (!at_punct(',')) break;
        take();
      }
      expect_punct(']');
      expect_punct(')');
    } else if (head == "hatcher") {
      take();
      expect_punct('(');
      expr.kind = PairExpr::Kind::kHatcher;
      expr.bundle = vb_expr();
      expect_punct(',');
      expr.n = keyword_int("n");
      expect_punct(',');
      expr.total = keyword_int("total");
      expect_punct(')');
    } else {
      expr.kind = PairExpr::Kind::kRef;
      expr.name = take().text;
    }
    return expr;
  }

  TheoryExpr theory_expr() {
    TheoryExpr expr;
    if (!at(Token::Type::kIdent)) fail("a theory expression");
    const std::string head = peek().text;
    if (head == "fr" || head == "mmm") {
      take();
      expect_punct('(');
      expr.kind = head == "fr" ? TheoryExpr::Kind::kFr : TheoryExpr::Kind::kMmm;
      expr.k = expect_int("the degree parameter k");
      expect_punct(')');
    } else if (head == "custom") {
      take();
      expect_punct('(');
      expr.kind = TheoryExpr::Kind::kCustom;
      expr.k = expect_int("the degree parameter k");
      expect_punct(',');
      expr.s1 = scalar_expr();
      expect_punct(',');
      expr.s2 = scalar_expr();
      expect_punct(')');
    } else {
      expr.kind = TheoryExpr::Kind::kRef;
      expr.name = take().text;
    }
    return expr;
  }

  // A rational in zeta symbols: terms joined by '+'/'-', each a '*'-product
  // of rationals and z<odd> factors with optional '^' powers.
  Scalar scalar_expr() {
    Scalar out = scalar_term();
    while (at_punct('+') || at_punct('-')) {
      bool minus = take().punct == '-';
      Scalar term = scalar_term();
      out += minus ? -term : term;
    }
    return out;
  }

  Scalar scalar_term() {
    bool negative = false;
    if (at_punct('-')) {
      take();
      negative = true;
    }
    Scalar out = scalar_factor();
    while (at_punct('*')) {
      take();
      out = out * scalar_factor();
    }
    return negative ? -out : out;
  }

  Scalar scalar_factor() {
    const Token& t = peek();
    if (t.type == Token::Type::kInt) {
      Rational q(take().value);
      if (at_punct('/')) {
        take();
        if (!at(Token::Type::kInt)) fail("a denominator");
        long long den = take().value;
        if (den == 0) throw ParseError(t.pos, "zero denominator");
        q /= den;
      }
      return Scalar(q);
    }
    if (t.type == Token::Type::kIdent && is_zeta_ident(t.text)) {
      int argument = 0;
      try {
        argument = std::stoi(take().text.substr(1));
      } catch (const std::exception&) {
        throw ParseError(t.pos, "zeta argument out of range");
      }
      int power = 1;
      if (at_punct('^')) {
        take();
        power = expect_int("a power");
        if (power < 1) throw ParseError(t.pos, "zeta powers must be >= 1");
      }
      try {
        return Scalar::term(Rational(1), ZetaMonomial(power, argument));
      } catch (const std::invalid_argument& err) {
        throw ParseError(t.pos, err.what());
      }
    }
    fail("a rational or zeta factor");
  }

  // Homogeneous polynomial in declared roots with scalar coefficients.
  GradedClass class_expr() {
    SourcePos start = peek().pos;
    if (at(Token::Type::kInt) && peek().value == 0 && !class_follows(1)) {
      take();
      return GradedClass(0);
    }
    try {
      GradedClass out = class_term();
      while (at_punct('+') || at_punct('-')) {
        bool minus = take().punct == '-';
        GradedClass term = class_term();
        out += minus ? -term : term;
      }
      return out;
    } catch (const DegreeMismatch& err) {
      throw ParseError(start, std::string("class is not homogeneous: ") + err.what());
    }
  }

  bool class_follows(int offset) const {
    const Token& t = peek(offset);
    return (t.type == Token::Type::kPunct && (t.punct == '*' || t.punct == '/')) ||
           t.type == Token::Type::kIdent || t.type == Token::Type::kInt;
  }

  GradedClass class_term() {
    bool negative = false;
    if (at_punct('-')) {
      take();
      negative = true;
    }
    Scalar coefficient(1);
    ChernMonomial monomial;
    bool any = false;
    for (;;) {
      const Token& t = peek();
      if (t.type == Token::Type::kInt) {
        Rational q(take().value);
        if (at_punct('/')) {
          take();
          if (!at(Token::Type::kInt)) fail("a denominator");
          long long den = take().value;
          if (den == 0) throw ParseError(t.pos, "zero denominator");
          q /= den;
        }
        coefficient = coefficient * Scalar(q);
      } else if (t.type == Token::Type::kIdent && is_zeta_ident(t.text)) {
        coefficient = coefficient * scalar_factor();
      } else if (t.type == Token::Type::kIdent) {
        std::string root = take().text;
        int power = 1;
        if (at_punct('^')) {
          take();
          power = expect_int("a power");
          if (power < 1) throw ParseError(t.pos, "exponents must be >= 1");
        }
        monomial[root] += power;
      } else {
        fail("a class factor");
      }
      any = true;
      if (!at_punct('*')) break;
      take();
    }
    if (!any) fail("a class term");
    if (negative) coefficient = -coefficient;
    return GradedClass::term(std::move(monomial), std::move(coefficient));
  }

  Query query() {
    Query q;
    const std::string head = expect_ident("a query");
    static const std::map<std::string, Query::Kind> kTheoryQueries = {
        {"tau", Query::Kind::kTau},
        {"tau_even", Query::Kind::kTauEven},
        {"tau_odd", Query::Kind::kTauOdd},
        {"tdelta", Query::Kind::kTdelta},
    };
    if (auto it = kTheoryQueries.find(head); it != kTheoryQueries.end()) {
      q.kind = it->second;
      expect_punct('(');
      q.theory = theory_expr();
      expect_punct(',');
      q.pair = pair_expr();
      expect_punct(')');
    } else if (head == "m2k") {
      q.kind = Query::Kind::kM2k;
      expect_punct('(');
      q.pair = pair_expr();
      expect_punct(',');
      q.k = expect_int("the degree parameter k");
      expect_punct(')');
    } else if (head == "chi") {
      q.kind = Query::Kind::kChi;
      expect_punct('(');
      q.pair = pair_expr();
      expect_punct(')');
    } else if (head == "transfer") {
      q.kind = Query::Kind::kTransfer;
      expect_punct('(');
      q.pair = pair_expr();
      expect_punct(',');
      q.pullback = class_expr();
      expect_punct(')');
    } else {
      throw ParseError(peek().pos, "unknown query '" + head + "'");
    }
    return q;
  }

  std::vector<Token> tokens_;
  size_t index_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

std::string print_vb(const VbExpr& expr);

std::string print_vb_term(const VbTerm& term) {
  switch (term.kind) {
    case VbTerm::Kind::kLine:
      return "line(" + term.name + ")";
    case VbTerm::Kind::kTrivial:
      return "trivial(" + std::to_string(term.number) + ")";
    case VbTerm::Kind::kComplement:
      return "complement(" + print_vb(term.inner) + ", " + std::to_string(term.number) + ")";
    case VbTerm::Kind::kRef:
      return term.name;
  }
  return "?";
}

std::string print_vb(const VbExpr& expr) {
  if (expr.empty()) return "0";
  std::string out;
  for (const VbTerm& term : expr) {
    if (!out.empty()) out += " + ";
    out += print_vb_term(term);
  }
  return out;
}

std::string print_pair(const PairExpr& expr) {
  switch (expr.kind) {
    case PairExpr::Kind::kRef:
      return expr.name;
    case PairExpr::Kind::kTrivial: {
      std::string out = "trivial(dim=" + std::to_string(expr.stats.dim) +
                        ", chi=" + std::to_string(expr.stats.chi);
      if (expr.stats.chi0 != 0) out += ", chi0=" + std::to_string(expr.stats.chi0);
      if (expr.stats.chi1 != 0) out += ", chi1=" + std::to_string(expr.stats.chi1);
      if (expr.stats.corner != 0) out += ", corner=" + std::to_string(expr.stats.corner);
      return out + ")";
    }
    case PairExpr::Kind::kSphere:
      return "sphere(" + print_vb(expr.bundle) + ", n=" + std::to_string(expr.n) + ")";
    case PairExpr::Kind::kDisk:
      return "disk(" + print_vb(expr.bundle) + ")";
    case PairExpr::Kind::kRelDisk:
      return "reldisk(" + print_vb(expr.bundle) + ")";
    case PairExpr::Kind::kDouble:
      return "double(" + print_pair(expr.children[0]) + ")";
    case PairExpr::Kind::kDv:
      return "dv(" + print_pair(expr.children[0]) + ")";
    case PairExpr::Kind::kUnion:
      return "union(" + print_pair(expr.children[0]) + ", " + print_pair(expr.children[1]) + ")";
    case PairExpr::Kind::kGlue:
      return "glue(" + print_pair(expr.children[0]) + ", " + print_pair(expr.children[1]) + ")";
    case PairExpr::Kind::kProd:
      return "prod(" + print_pair(expr.children[0]) + ", " + print_pair(expr.children[1]) + ")";
    case PairExpr::Kind::kMorse: {
      std::string out = "morse(base=" + print_pair(expr.children[0]) + ", handles=[";
      bool first = true;
      for (const PairExpr::Handle& h : expr.handles) {
        if (!first) out += ", ";
        first = false;
        out += "(" + std::to_string(h.index) + ", " + print_vb(h.negative) + ", " +
               print_vb(h.positive) + ")";
      }
      return out + "])";
    }
    case PairExpr::Kind::kHatcher:
      return "hatcher(" + print_vb(expr.bundle) + ", n=" + std::to_string(expr.n) +
             ", total=" + std::to_string(expr.total) + ")";
  }
  return "?";
}

std::string print_theory(const TheoryExpr& expr) {
  switch (expr.kind) {
    case TheoryExpr::Kind::kRef:
      return expr.name;
    case TheoryExpr::Kind::kFr:
      return "fr(" + std::to_string(expr.k) + ")";
    case TheoryExpr::Kind::kMmm:
      return "mmm(" + std::to_string(expr.k) + ")";
    case TheoryExpr::Kind::kCustom:
      return "custom(" + std::to_string(expr.k) + ", " + expr.s1.str() + ", " + expr.s2.str() +
             ")";
  }
  return "?";
}

std::string print_query(const Query& q) {
  switch (q.kind) {
    case Query::Kind::kTau:
      return "tau(" + print_theory(q.theory) + ", " + print_pair(q.pair) + ")";
    case Query::Kind::kTauEven:
      return "tau_even(" + print_theory(q.theory) + ", " + print_pair(q.pair) + ")";
    case Query::Kind::kTauOdd:
      return "tau_odd(" + print_theory(q.theory) + ", " + print_pair(q.pair) + ")";
    case Query::Kind::kTdelta:
      return "tdelta(" + print_theory(q.theory) + ", " + print_pair(q.pair) + ")";
    case Query::Kind::kM2k:
      return "m2k(" + print_pair(q.pair) + ", " + std::to_string(q.k) + ")";
    case Query::Kind::kChi:
      return "chi(" + print_pair(q.pair) + ")";
    case Query::Kind::kTransfer:
      return "transfer(" + print_pair(q.pair) + ", " + q.pullback.str() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Runner

struct Runtime {
  Workspace workspace;
  std::map<std::string, BundleRef> pairs;
  std::map<std::string, TorsionTheory> theories;
  std::set<std::string> names;  // one namespace for all declarations

  void claim(const std::string& name, SourcePos pos) {
    if (!names.insert(name).second) {
      throw SemanticError(pos, "'" + name + "' is already defined");
    }
  }
};

VirtualBundle resolve_vb(const VbExpr& expr, const Runtime& rt, SourcePos pos) {
  VirtualBundle out;
  for (const VbTerm& term : expr) {
    switch (term.kind) {
      case VbTerm::Kind::kLine:
        if (!rt.workspace.has_root(term.name)) {
          throw SemanticError(pos, "undeclared root '" + term.name + "'");
        }
        out = out + VirtualBundle::line(term.name);
        break;
      case VbTerm::Kind::kTrivial:
        out = out + VirtualBundle::trivial(term.number);
        break;
      case VbTerm::Kind::kComplement:
        out = out + resolve_vb(term.inner, rt, pos).complement(term.number);
        break;
      case VbTerm::Kind::kRef: {
        const VirtualBundle* found = rt.workspace.find_bundle(term.name);
        if (found == nullptr) {
          throw SemanticError(pos, "undefined bundle '" + term.name + "'");
        }
        out = out + *found;
        break;
      }
    }
  }
  return out;
}

BundleRef resolve_pair(const PairExpr& expr, const Runtime& rt, SourcePos pos) {
  switch (expr.kind) {
    case PairExpr::Kind::kRef: {
      auto it = rt.pairs.find(expr.name);
      if (it == rt.pairs.end()) {
        throw SemanticError(pos, "undefined bundle pair '" + expr.name + "'");
      }
      return it->second;
    }
    case PairExpr::Kind::kTrivial:
      return BundlePair::make_trivial(expr.stats);
    case PairExpr::Kind::kSphere:
      return BundlePair::make_sphere(resolve_vb(expr.bundle, rt, pos), expr.n);
    case PairExpr::Kind::kDisk:
      return BundlePair::make_disk(resolve_vb(expr.bundle, rt, pos));
    case PairExpr::Kind::kRelDisk:
      return BundlePair::make_rel_disk(resolve_vb(expr.bundle, rt, pos));
    case PairExpr::Kind::kDouble:
      return BundlePair::make_double(resolve_pair(expr.children[0], rt, pos));
    case PairExpr::Kind::kDv:
      return BundlePair::make_vertical_boundary(resolve_pair(expr.children[0], rt, pos));
    case PairExpr::Kind::kUnion:
      return BundlePair::make_union_vertical(resolve_pair(expr.children[0], rt, pos),
                                             resolve_pair(expr.children[1], rt, pos));
    case PairExpr::Kind::kGlue:
      return BundlePair::make_union_handle(resolve_pair(expr.children[0], rt, pos),
                                           resolve_pair(expr.children[1], rt, pos));
    case PairExpr::Kind::kProd:
      return BundlePair::make_fiber_product(resolve_pair(expr.children[0], rt, pos),
                                            resolve_pair(expr.children[1], rt, pos));
    case PairExpr::Kind::kMorse: {
      std::vector<MorseHandle> handles;
      for (const PairExpr::Handle& h : expr.handles) {
        handles.push_back({h.index, resolve_vb(h.negative, rt, pos),
                           resolve_vb(h.positive, rt, pos)});
      }
      return BundlePair::make_morse(resolve_pair(expr.children[0], rt, pos), std::move(handles));
    }
    case PairExpr::Kind::kHatcher:
      return BundlePair::make_hatcher(resolve_vb(expr.bundle, rt, pos), expr.n, expr.total);
  }
  throw SemanticError(pos, "unknown bundle pair expression");
}

BundleRef resolve_pair_checked(const PairExpr& expr, const Runtime& rt, SourcePos pos) {
  BundleRef e = resolve_pair(expr, rt, pos);
  auto diagnostics = validate(*e);
  if (!diagnostics.empty()) {
    throw SemanticError(pos, diagnostics.front().path + ": " + diagnostics.front().message);
  }
  return e;
}

TorsionTheory resolve_theory(const TheoryExpr& expr, const Runtime& rt, SourcePos pos) {
  switch (expr.kind) {
    case TheoryExpr::Kind::kRef: {
      auto it = rt.theories.find(expr.name);
      if (it == rt.theories.end()) {
        throw SemanticError(pos, "undefined theory '" + expr.name + "'");
      }
      return it->second;
    }
    case TheoryExpr::Kind::kFr:
      if (expr.k < 1) throw SemanticError(pos, "fr(k) needs k >= 1");
      return fr_theory(expr.k);
    case TheoryExpr::Kind::kMmm:
      if (expr.k < 1) throw SemanticError(pos, "mmm(k) needs k >= 1");
      return mmm_theory(expr.k);
    case TheoryExpr::Kind::kCustom:
      if (expr.k < 1) throw SemanticError(pos, "custom(k, s1, s2) needs k >= 1");
      return custom_theory(expr.k, expr.s1, expr.s2);
  }
  throw SemanticError(pos, "unknown theory expression");
}

std::string run_query(const Query& q, const Runtime& rt, SourcePos pos) {
  BundleRef e = resolve_pair_checked(q.pair, rt, pos);
  try {
    switch (q.kind) {
      case Query::Kind::kTau:
        return tau(resolve_theory(q.theory, rt, pos), *e).str();
      case Query::Kind::kTauEven:
        return tau_even(resolve_theory(q.theory, rt, pos), *e).str();
      case Query::Kind::kTauOdd:
        return tau_odd(resolve_theory(q.theory, rt, pos), *e).str();
      case Query::Kind::kTdelta:
        return difference_torsion(resolve_theory(q.theory, rt, pos), *e).str();
      case Query::Kind::kM2k:
        if (q.k < 1) throw SemanticError(pos, "m2k(E, k) needs k >= 1");
        return m2k_direct(*e, q.k).str();
      case Query::Kind::kChi:
        return std::to_string(e->stats().chi_rel());
      case Query::Kind::kTransfer: {
        for (const auto& [monomial, coefficient] : q.pullback.terms()) {
          for (const auto& [root, power] : monomial) {
            if (!rt.workspace.has_root(root)) {
              throw SemanticError(pos, "undeclared root '" + root + "' in transfer class");
            }
          }
        }
        return transfer_pullback(*e, q.pullback).str();
      }
    }
  } catch (const ScriptError&) {
    throw;
  } catch (const std::exception& err) {
    throw EvalError(pos, err.what());
  }
  throw EvalError(pos, "unknown query");
}

}  // namespace

Script parse_script(std::string_view text) { return Parser(text).parse(); }

std::string print_script(const Script& script) {
  std::string out;
  for (const Statement& stmt : script.statements) {
    switch (stmt.kind) {
      case Statement::Kind::kRoot:
        out += "root " + stmt.name + ";";
        break;
      case Statement::Kind::kVb:
        out += "vb " + stmt.name + " = " + print_vb(stmt.vb) + ";";
        break;
      case Statement::Kind::kPair:
        out += stmt.name + " = " + print_pair(stmt.pair) + ";";
        break;
      case Statement::Kind::kTheory:
        out += "theory " + stmt.name + " = " + print_theory(stmt.theory) + ";";
        break;
      case Statement::Kind::kQuery:
        out += "query " + print_query(stmt.query) + ";";
        break;
    }
    out += '\n';
  }
  return out;
}

std::string run_script(const Script& script) {
  Runtime rt;
  std::string output;
  for (const Statement& stmt : script.statements) {
    switch (stmt.kind) {
      case Statement::Kind::kRoot:
        rt.claim(stmt.name, stmt.pos);
        try {
          rt.workspace.declare_root(stmt.name);
        } catch (const std::invalid_argument& err) {
          throw SemanticError(stmt.pos, err.what());
        }
        break;
      case Statement::Kind::kVb:
        rt.claim(stmt.name, stmt.pos);
        try {
          rt.workspace.define_bundle(stmt.name, resolve_vb(stmt.vb, rt, stmt.pos));
        } catch (const std::invalid_argument& err) {
          throw SemanticError(stmt.pos, err.what());
        }
        break;
      case Statement::Kind::kPair:
        rt.claim(stmt.name, stmt.pos);
        rt.pairs.emplace(stmt.name, resolve_pair_checked(stmt.pair, rt, stmt.pos));
        break;
      case Statement::Kind::kTheory:
        rt.claim(stmt.name, stmt.pos);
        rt.theories.emplace(stmt.name, resolve_theory(stmt.theory, rt, stmt.pos));
        break;
      case Statement::Kind::kQuery:
        output += run_query(stmt.query, rt, stmt.pos);
        output += '\n';
        break;
    }
  }
  return output;
}

std::string run_text(std::string_view text) { return run_script(parse_script(text)); }

}  // namespace torscalc

#include "torscalc/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace torscalc {

Scalar::Scalar(Rational q) {
  if (q != 0) terms_.emplace(ZetaMonomial{}, std::move(q));
}

Scalar Scalar::zeta(int argument) {
  if (argument < 3 || argument % 2 == 0) {
    throw std::invalid_argument("zeta argument must be an odd integer >= 3, got " +
                                std::to_string(argument));
  }
  return term(Rational(1), ZetaMonomial{argument});
}

Scalar Scalar::term(Rational coefficient, ZetaMonomial monomial) {
  for (int arg : monomial) {
    if (arg < 3 || arg % 2 == 0) {
      throw std::invalid_argument("zeta argument must be an odd integer >= 3, got " +
                                  std::to_string(arg));
    }
  }
  std::sort(monomial.begin(), monomial.end());
  Scalar s;
  if (coefficient != 0) s.terms_.emplace(std::move(monomial), std::move(coefficient));
  return s;
}

bool Scalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Scalar::rational_part() const {
  auto it = terms_.find(ZetaMonomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

Scalar Scalar::operator-() const {
  Scalar out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  for (const auto& [m, c] : other.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      ZetaMonomial m;
      m.reserve(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
      Scalar t;
      t.terms_.emplace(std::move(m), ca * cb);
      out += t;
    }
  }
  return out;
}

Scalar Scalar::div_exact(const Scalar& divisor) const {
  if (divisor.is_zero()) throw ZeroDivisor("division by the zero scalar");
  if (!divisor.is_monomial()) {
    throw NotDivisible("divisor must be a rational multiple of a single zeta monomial: " +
                       divisor.str());
  }
  const auto& [dm, dc] = *divisor.terms_.begin();
  Scalar out;
  for (const auto& [m, c] : terms_) {
    if (!std::includes(m.begin(), m.end(), dm.begin(), dm.end())) {
      throw NotDivisible("term " + Scalar::term(c, m).str() + " is not divisible by " +
                         divisor.str());
    }
    ZetaMonomial q;
    std::set_difference(m.begin(), m.end(), dm.begin(), dm.end(), std::back_inserter(q));
    out.terms_.emplace(std::move(q), c / dc);
  }
  return out;
}

namespace {

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << '/' << denominator(q);
  return os.str();
}

std::string zeta_monomial_str(const ZetaMonomial& m) {
  std::string out;
  for (size_t i = 0; i < m.size();) {
    size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    if (!out.empty()) out += '*';
    out += 'z' + std::to_string(m[i]);
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

}  // namespace

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    if (m.empty()) {
      out += rational_str(c);
    } else if (c == 1) {
      out += zeta_monomial_str(m);
    } else if (c == -1) {
      out += '-' + zeta_monomial_str(m);
    } else {
      out += rational_str(c) + '*' + zeta_monomial_str(m);
    }
  }
  return out;
}

namespace {

// Minimal recursive-descent parser for the canonical scalar grammar:
//   scalar := term (('+' | '-') term)*
//   term   := ['-'] factor ('*' factor)*
//   factor := INT ['/' INT] | 'z' INT ['^' INT]
class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  Scalar parse() {
    Scalar out = term();
    skip_ws();
    while (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      bool minus = text_[pos_] == '-';
      ++pos_;
      Scalar t = term();
      out += minus ? -t : t;
      skip_ws();
    }
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ScalarParseError("scalar parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Integer integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Scalar term() {
    skip_ws();
    bool negate = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negate = text_[pos_] == '-';
      ++pos_;
    }
    Scalar out = factor();
    while (peek_is('*')) {
      ++pos_;
      out = out * factor();
    }
    return negate ? -out : out;
  }

  Scalar factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a factor");
    if (text_[pos_] == 'z') {
      ++pos_;
      int arg = static_cast<int>(integer());
      int power = 1;
      if (peek_is('^')) {
        ++pos_;
        power = static_cast<int>(integer());
        if (power < 1) fail("zeta power must be >= 1");
      }
      return Scalar::term(Rational(1), ZetaMonomial(power, arg));
    }
    Rational q(integer());
    if (peek_is('/')) {
      ++pos_;
      Integer den = integer();
      if (den == 0) fail("zero denominator");
      q /= den;
    }
    return Scalar(q);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text) { return ScalarParser(text).parse(); }

Scalar factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative integer");
  Integer out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return Scalar(out);
}

int parity_sign(int n) { return n % 2 == 0 ? 1 : -1; }

}  // namespace torscalc

#include "torscalc/chern.hpp"

#include <cstdlib>

namespace torscalc {

VirtualBundle VirtualBundle::line(const std::string& root) {
  VirtualBundle b;
  b.roots_.emplace(root, 1);
  return b;
}

VirtualBundle VirtualBundle::trivial(int rank) {
  VirtualBundle b;
  b.trivial_rank_ = rank;
  return b;
}

VirtualBundle VirtualBundle::from_parts(std::map<std::string, int> roots, int trivial_rank) {
  VirtualBundle b;
  std::erase_if(roots, [](const auto& entry) { return entry.second == 0; });
  b.roots_ = std::move(roots);
  b.trivial_rank_ = trivial_rank;
  return b;
}

VirtualBundle operator+(const VirtualBundle& a, const VirtualBundle& b) {
  VirtualBundle out = a;
  for (const auto& [name, mult] : b.roots_) {
    auto it = out.roots_.find(name);
    if (it == out.roots_.end()) {
      out.roots_.emplace(name, mult);
    } else {
      it->second += mult;
      if (it->second == 0) out.roots_.erase(it);
    }
  }
  out.trivial_rank_ += b.trivial_rank_;
  return out;
}

VirtualBundle VirtualBundle::complement(int total_rank) const {
  VirtualBundle out;
  for (const auto& [name, mult] : roots_) out.roots_.emplace(name, -mult);
  out.trivial_rank_ = total_rank - trivial_rank_;
  return out;
}

int VirtualBundle::real_rank() const {
  int rank = trivial_rank_;
  for (const auto& [name, mult] : roots_) rank += 2 * mult;
  return rank;
}

std::string VirtualBundle::str() const {
  std::string positive;
  std::string negative;
  for (const auto& [name, mult] : roots_) {
    std::string& side = mult > 0 ? positive : negative;
    for (int i = 0; i < std::abs(mult); ++i) {
      if (!side.empty()) side += " + ";
      side += "line(" + name + ")";
    }
  }
  std::string out = positive;
  if (!negative.empty()) {
    if (!out.empty()) out += " + ";
    out += "complement(" + negative + ", 0)";
  }
  if (trivial_rank_ != 0 || out.empty()) {
    if (!out.empty()) out += " + ";
    out += "trivial(" + std::to_string(trivial_rank_) + ")";
  }
  return out;
}

GradedClass::GradedClass(int degree) : degree_(degree) {
  if (degree < 0 || degree % 2 != 0) {
    throw std::invalid_argument("class degree must be a non-negative even integer");
  }
}

namespace {

int monomial_degree(const ChernMonomial& m) {
  int degree = 0;
  for (const auto& [name, exp] : m) {
    if (exp < 1) throw std::invalid_argument("monomial exponents must be >= 1");
    degree += 2 * exp;
  }
  return degree;
}

}  // namespace

GradedClass GradedClass::term(ChernMonomial monomial, Scalar coefficient) {
  GradedClass out(monomial_degree(monomial));
  if (!coefficient.is_zero()) out.terms_.emplace(std::move(monomial), std::move(coefficient));
  return out;
}

GradedClass GradedClass::operator-() const {
  GradedClass out(degree_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

GradedClass& GradedClass::operator+=(const GradedClass& other) {
  if (degree_ != other.degree_) {
    throw DegreeMismatch("cannot add classes of degree " + std::to_string(degree_) + " and " +
                         std::to_string(other.degree_));
  }
  for (const auto& [m, c] : other.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

GradedClass& GradedClass::operator-=(const GradedClass& other) { return *this += -other; }

GradedClass operator*(const GradedClass& a, const GradedClass& b) {
  GradedClass out(a.degree_ + b.degree_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      ChernMonomial m = ma;
      for (const auto& [name, exp] : mb) m[name] += exp;
      out += GradedClass::term(std::move(m), ca * cb);
    }
  }
  return out;
}

GradedClass GradedClass::scaled(const Scalar& s) const {
  GradedClass out(degree_);
  if (s.is_zero()) return out;
  for (const auto& [m, c] : terms_) {
    Scalar sc = c * s;
    if (!sc.is_zero()) out.terms_.emplace(m, std::move(sc));
  }
  return out;
}

namespace {

std::string chern_monomial_str(const ChernMonomial& m) {
  std::string out;
  for (const auto& [name, exp] : m) {
    if (!out.empty()) out += '*';
    out += name;
    if (exp > 1) out += '^' + std::to_string(exp);
  }
  return out;
}

}  // namespace

std::string GradedClass::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string ms = chern_monomial_str(m);
    if (ms.empty()) {
      out += c.str();
    } else if (c.is_monomial()) {
      std::string cs = c.str();
      if (cs == "1") {
        out += ms;
      } else if (cs == "-1") {
        out += '-' + ms;
      } else {
        out += cs + '*' + ms;
      }
    } else {
      out += '(' + c.str() + ")*" + ms;
    }
  }
  return out;
}

GradedClass ch4k(const VirtualBundle& xi, int k) {
  if (k < 1) throw std::invalid_argument("ch4k requires k >= 1");
  GradedClass out(4 * k);
  Scalar inv_factorial = Scalar(1).div_exact(factorial(2 * k));
  for (const auto& [name, mult] : xi.roots()) {
    out += GradedClass::term(ChernMonomial{{name, 2 * k}}, Scalar(mult) * inv_factorial);
  }
  return out;
}

}  // namespace torscalc

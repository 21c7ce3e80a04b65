#include "weingarten/rational_function.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "weingarten/errors.hpp"

namespace weingarten {

RationalFunction RationalFunction::normalize(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DomainError("division by zero polynomial");
  RationalFunction out;
  if (num.is_zero()) return out;
  if (den.degree() > 0 && num.degree() > 0) {
    const Polynomial g = gcd(num, den);
    if (g.degree() > 0) {
      num = divide(num, g).first;
      den = divide(den, g).first;
    }
  }
  const Rational scale = den.leading().inverse();
  if (scale != Rational(1)) {
    num *= Polynomial(scale);
    den *= Polynomial(scale);
  }
  out.num_ = std::move(num);
  out.den_ = std::move(den);
  return out;
}

RationalFunction RationalFunction::variable() { return RationalFunction(Polynomial::variable()); }

std::optional<Rational> RationalFunction::constant() const {
  if (num_.degree() > 0 || den_.degree() > 0) return std::nullopt;
  return num_.coefficient(0) / den_.coefficient(0);
}

Rational RationalFunction::evaluate_at(const Rational& at) const {
  const Rational d = den_.evaluate(at);
  if (d.is_zero()) {
    throw DomainError("pole at n=" + at.str() + ": denominator " + den_.str() + " vanishes");
  }
  return num_.evaluate(at) / d;
}

RationalFunction RationalFunction::compose(const Polynomial& inner) const {
  return normalize(num_.compose(inner), den_.compose(inner));
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw DomainError("division by zero rational function");
  return normalize(den_, num_);
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs) {
  if (rhs.is_zero()) return *this;
  if (den_ == rhs.den_) {
    *this = normalize(num_ + rhs.num_, den_);
  } else {
    *this = normalize(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
  }
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs) { return *this += -rhs; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs) {
  if (is_zero() || rhs.is_zero()) {
    *this = RationalFunction();
    return *this;
  }
  *this = normalize(num_ * rhs.num_, den_ * rhs.den_);
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero rational function");
  *this = normalize(num_ * rhs.den_, den_ * rhs.num_);
  return *this;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction out = *this;
  out.num_ = -out.num_;
  return out;
}

namespace {

// Integer roots searched when factoring for display.
constexpr long kRootSearchBound = 64;

struct Factored {
  std::map<long, int> linear;  // shift a -> multiplicity of (n+a)
  Polynomial rest;             // monic cofactor without small integer roots
};

Factored factor_for_display(const Polynomial& monic) {
  Factored out;
  Polynomial rest = monic;
  for (long a = -kRootSearchBound; a <= kRootSearchBound && rest.degree() > 0; ++a) {
    const Polynomial lin = Polynomial::linear(Rational(a));
    while (rest.degree() > 0 && rest.evaluate(Rational(-a)).is_zero()) {
      rest = divide(rest, lin).first;
      ++out.linear[a];
    }
  }
  out.rest = rest;
  return out;
}

mpz_class lcm_of_denominators(const Polynomial& p) {
  mpz_class l = 1;
  for (const auto& c : p.coefficients()) {
    mpz_class d = c.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

std::string linear_str(long a) {
  if (a == 0) return "n";
  return "(n" + std::string(a > 0 ? "+" : "-") + std::to_string(a > 0 ? a : -a) + ")";
}

// Appends the factors of a monic polynomial; returns the rational scale that
// the integer-primitive cofactor introduced.
Rational append_factors(const Polynomial& monic, std::vector<std::string>& items) {
  const Factored f = factor_for_display(monic);
  for (const auto& [a, mult] : f.linear) {
    std::string s = linear_str(a);
    if (mult > 1) s += "^" + std::to_string(mult);
    items.push_back(s);
  }
  if (f.rest.degree() <= 0) return Rational(1);
  const mpz_class l = lcm_of_denominators(f.rest);
  const Polynomial scaled = f.rest * Polynomial(Rational(l));
  items.push_back("(" + scaled.str() + ")");
  return Rational(l).inverse();
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += "*";
    out += items[i];
  }
  return out;
}

}  // namespace

std::string RationalFunction::str() const {
  if (is_zero()) return "0";
  Rational scale = num_.leading();
  std::vector<std::string> num_items;
  std::vector<std::string> den_items;
  scale *= append_factors(num_.monic(), num_items);
  scale /= append_factors(den_, den_items);

  const mpz_class p = abs(scale.numerator());
  const mpz_class q = scale.denominator();
  if (p != 1 || num_items.empty()) num_items.insert(num_items.begin(), p.get_str());
  if (q != 1) den_items.insert(den_items.begin(), q.get_str());

  std::string out = scale.sign() < 0 ? "-" : "";
  out += join(num_items);
  if (!den_items.empty()) {
    out += "/";
    out += den_items.size() > 1 ? "(" + join(den_items) + ")" : den_items.front();
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RationalFunction parse_all() {
    RationalFunction value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse rational function '" + std::string(text_) + "': " + why +
                                " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalFunction expr() {
    RationalFunction value = term();
    for (;;) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  RationalFunction term() {
    RationalFunction value = unary();
    for (;;) {
      if (accept('*')) {
        value *= unary();
      } else if (accept('/')) {
        value /= unary();
      } else {
        return value;
      }
    }
  }

  RationalFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = atom();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
    RationalFunction out(1);
    for (int i = 0; i < e; ++i) out *= base;
    return out;
  }

  RationalFunction atom() {
    skip_space();
    if (accept('(')) {
      RationalFunction inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (pos_ < text_.size() && text_[pos_] == 'n') {
      ++pos_;
      return RationalFunction::variable();
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number, 'n' or '('");
    return RationalFunction(Rational(mpz_class(std::string(text_.substr(start, pos_ - start)))));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction RationalFunction::parse(std::string_view text) { return Parser(text).parse_all(); }

std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.str(); }

}  // namespace weingarten

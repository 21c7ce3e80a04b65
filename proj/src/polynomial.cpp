#include "weingarten/polynomial.hpp"

#include <ostream>

#include "weingarten/errors.hpp"

namespace weingarten {

Polynomial::Polynomial(const Rational& constant) {
  if (!constant.is_zero()) coeffs_.push_back(constant);
}

Polynomial Polynomial::from_coefficients(std::vector<Rational> coefficients) {
  Polynomial p;
  p.coeffs_ = std::move(coefficients);
  p.trim();
  return p;
}

Polynomial Polynomial::variable() { return from_coefficients({Rational(0), Rational(1)}); }

Polynomial Polynomial::linear(const Rational& shift) { return from_coefficients({shift, Rational(1)}); }

Rational Polynomial::coefficient(int d) const {
  if (d < 0 || d >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[d];
}

Rational Polynomial::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational Polynomial::evaluate(const Rational& at) const {
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= at;
    acc += *it;
  }
  return acc;
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= inner;
    acc += Polynomial(*it);
  }
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  const Rational scale = leading().inverse();
  Polynomial out = *this;
  for (auto& c : out.coeffs_) c *= scale;
  return out;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> out;
  for (std::size_t d = 1; d < coeffs_.size(); ++d) out.push_back(coeffs_[d] * Rational(static_cast<long>(d)));
  return from_coefficients(std::move(out));
}

namespace {

void append_monomial(std::string& out, const Rational& coeff, int degree, bool first) {
  Rational magnitude = coeff.abs();
  if (coeff.sign() < 0) {
    out += "-";
  } else if (!first) {
    out += "+";
  }
  const bool unit = magnitude == Rational(1);
  if (degree == 0) {
    out += magnitude.str();
    return;
  }
  if (!unit) {
    out += magnitude.str();
    out += "*";
  }
  out += "n";
  if (degree > 1) out += "^" + std::to_string(degree);
}

}  // namespace

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    if (coeffs_[d].is_zero()) continue;
    append_monomial(out, coeffs_[d], d, first);
    first = false;
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

std::pair<Polynomial, Polynomial> divide(const Polynomial& dividend, const Polynomial& divisor) {
  if (divisor.is_zero()) throw DomainError("division by zero polynomial");
  std::vector<Rational> rem(dividend.coefficients().begin(), dividend.coefficients().end());
  const int dd = divisor.degree();
  const Rational lead_inv = divisor.leading().inverse();
  std::vector<Rational> quot;
  if (dividend.degree() >= dd) quot.resize(dividend.degree() - dd + 1);
  for (int d = dividend.degree(); d >= dd; --d) {
    if (rem[d].is_zero()) continue;
    const Rational factor = rem[d] * lead_inv;
    quot[d - dd] = factor;
    for (int i = 0; i <= dd; ++i) rem[d - dd + i] -= factor * divisor.coefficient(i);
  }
  return {Polynomial::from_coefficients(std::move(quot)), Polynomial::from_coefficients(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divide(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

}  // namespace weingarten

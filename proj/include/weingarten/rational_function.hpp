#pragma once

#include <concepts>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "weingarten/polynomial.hpp"
#include "weingarten/rational.hpp"

namespace weingarten {

/// Reduced quotient of two polynomials in the formal dimension symbol n.
///
/// Normal form: numerator and denominator coprime over Q, denominator monic,
/// and the zero function stored as 0/1. Two equal functions therefore have
/// identical fields.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(const Rational& constant) : num_(constant), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const Polynomial& p) : num_(p), den_(1) {}              // NOLINT(google-explicit-constructor)
  template <std::integral T>
  RationalFunction(T constant) : RationalFunction(Rational(constant)) {}  // NOLINT(google-explicit-constructor)

  /// Reduces num/den to normal form. Throws DomainError("division by zero
  /// polynomial") when den is zero.
  static RationalFunction normalize(Polynomial num, Polynomial den);
  /// The function n.
  static RationalFunction variable();
  /// Parses the text produced by str() (and any +,-,*,/,^ expression in n).
  static RationalFunction parse(std::string_view text);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// The value if the function is constant.
  std::optional<Rational> constant() const;

  /// Exact value at n = at; throws DomainError naming the vanishing
  /// denominator at a pole.
  Rational evaluate_at(const Rational& at) const;
  /// f(inner(n)).
  RationalFunction compose(const Polynomial& inner) const;
  RationalFunction inverse() const;

  /// Factored rendering, e.g. "-1/((n-1)*n*(n+1))".
  std::string str() const;

  RationalFunction& operator+=(const RationalFunction& rhs);
  RationalFunction& operator-=(const RationalFunction& rhs);
  RationalFunction& operator*=(const RationalFunction& rhs);
  RationalFunction& operator/=(const RationalFunction& rhs);

  friend RationalFunction operator+(RationalFunction lhs, const RationalFunction& rhs) { return lhs += rhs; }
  friend RationalFunction operator-(RationalFunction lhs, const RationalFunction& rhs) { return lhs -= rhs; }
  friend RationalFunction operator*(RationalFunction lhs, const RationalFunction& rhs) { return lhs *= rhs; }
  friend RationalFunction operator/(RationalFunction lhs, const RationalFunction& rhs) { return lhs /= rhs; }
  RationalFunction operator-() const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  Polynomial num_;
  Polynomial den_;
};

std::ostream& operator<<(std::ostream& os, const RationalFunction& f);

}  // namespace weingarten

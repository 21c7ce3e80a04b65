#pragma once

#include <concepts>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weingarten/rational.hpp"

namespace weingarten {

/// Univariate polynomial in the formal dimension symbol n with rational
/// coefficients. coefficients()[d] is the coefficient of n^d; trailing zeros
/// are trimmed so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
  template <std::integral T>
  Polynomial(T constant) : Polynomial(Rational(constant)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial from_coefficients(std::vector<Rational> coefficients);
  /// The polynomial n.
  static Polynomial variable();
  /// n + shift.
  static Polynomial linear(const Rational& shift);

  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  std::span<const Rational> coefficients() const { return coeffs_; }
  Rational coefficient(int d) const;
  /// Leading coefficient; zero for the zero polynomial.
  Rational leading() const;

  Rational evaluate(const Rational& at) const;
  /// Composition p(q(n)).
  Polynomial compose(const Polynomial& inner) const;
  Polynomial monic() const;
  Polynomial derivative() const;

  /// Expanded form such as "n^2-n+2".
  std::string str() const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(Polynomial lhs, const Polynomial& rhs) { return lhs *= rhs; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Euclidean division: returns (quotient, remainder). Throws DomainError when
/// the divisor is zero.
std::pair<Polynomial, Polynomial> divide(const Polynomial& dividend, const Polynomial& divisor);

/// Monic greatest common divisor over the rationals; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace weingarten

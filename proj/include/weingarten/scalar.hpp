#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "weingarten/errors.hpp"
#include "weingarten/polynomial.hpp"
#include "weingarten/rational.hpp"
#include "weingarten/rational_function.hpp"

namespace weingarten {

/// Exact scalar domains the engine runs over: Rational (a concrete dimension)
/// or RationalFunction (the formal dimension symbol n).
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool symbolic = false;
  static std::optional<long> integer_value(const Rational& v) {
    if (!v.is_integer() || !v.numerator().fits_slong_p()) return std::nullopt;
    return v.numerator().get_si();
  }
  static std::string to_string(const Rational& v) { return v.str(); }
  static Rational parse(std::string_view text) { return Rational::parse(text); }
};

template <>
struct ScalarTraits<RationalFunction> {
  static constexpr bool symbolic = true;
  static std::optional<long> integer_value(const RationalFunction& v) {
    if (auto c = v.constant()) return ScalarTraits<Rational>::integer_value(*c);
    return std::nullopt;
  }
  static std::string to_string(const RationalFunction& v) { return v.str(); }
  static RationalFunction parse(std::string_view text) { return RationalFunction::parse(text); }
  static RationalFunction dimension() { return RationalFunction::variable(); }
};

template <class Scalar>
concept ExactScalar = requires { ScalarTraits<Scalar>::symbolic; };

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// a (a+1) ... (a+k-1); the empty product for k = 0.
template <class T>
T rising_factorial(const T& a, int k) {
  T out(1);
  for (int j = 0; j < k; ++j) out *= a + T(j);
  return out;
}

/// a (a-1) ... (a-k+1); the empty product for k = 0.
template <class T>
T falling_factorial(const T& a, int k) {
  T out(1);
  for (int j = 0; j < k; ++j) out *= a - T(j);
  return out;
}

/// Checked reciprocal: names the context when the value vanishes.
template <class Scalar>
Scalar reciprocal(const Scalar& v, const std::string& context) {
  if (v == Scalar(0)) throw DomainError(context);
  return Scalar(1) / v;
}

}  // namespace weingarten

namespace Eigen {

template <>
struct NumTraits<weingarten::Rational> : GenericNumTraits<weingarten::Rational> {
  using Real = weingarten::Rational;
  using NonInteger = weingarten::Rational;
  using Nested = weingarten::Rational;
  using Literal = weingarten::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 10,
    MulCost = 20
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<weingarten::RationalFunction> : GenericNumTraits<weingarten::RationalFunction> {
  using Real = weingarten::RationalFunction;
  using NonInteger = weingarten::RationalFunction;
  using Nested = weingarten::RationalFunction;
  using Literal = weingarten::RationalFunction;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 100,
    MulCost = 200
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

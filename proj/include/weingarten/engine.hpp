#pragma once

#include <string>

#include "weingarten/class_function.hpp"
#include "weingarten/errors.hpp"
#include "weingarten/linear_solve.hpp"
#include "weingarten/scalar.hpp"

namespace weingarten {

/// Independent ways of producing Wg_{k,n}.
enum class WgRoute {
  CharacterExpansion,  ///< (1/k!) sum_lambda f^lambda / (n up lambda) chi^lambda
  GramInverse,         ///< exact solve of G_{k,n} * Wg = delta in the class basis
  RecursiveAscension,  ///< Wg_{k,n} = Raise_{k,n} * Wg_{k,n-1}, down to n = k
};

/// Where the recursive route stops at n = k.
enum class RecursionBase { CharacterExpansion, Ladder };

struct EngineOptions {
  int dense_bound = kDefaultDenseBound;
  RecursionBase base = RecursionBase::CharacterExpansion;
};

std::string to_string(WgRoute route);

namespace detail {

template <class Scalar>
std::string dim_str(const Scalar& n) {
  return ScalarTraits<Scalar>::to_string(n);
}

/// Rejects integer dimensions 0 <= n < k, where G_{k,n} is singular.
template <class Scalar>
void require_invertible_gram(int k, const Scalar& n) {
  if (auto v = ScalarTraits<Scalar>::integer_value(n); v && *v >= 0 && *v < k) {
    throw DomainError("Wg_{k,n} undefined for k=" + std::to_string(k) + " > n=" + std::to_string(*v) +
                      "; use pseudo-wg for the pseudo-inverse");
  }
}

inline void require_degree(int k) {
  if (k < 1) throw std::invalid_argument("degree k must be >= 1");
}

}  // namespace detail

/// G_{k,n}(pi) = n^{kappa(pi)}.
template <ExactScalar Scalar>
ClassFunction<Scalar> gram_function(int k, const Scalar& n) {
  detail::require_degree(k);
  return ClassFunction<Scalar>::from_cycle_type(k, [&](const Partition& mu) {
    Scalar out(1);
    for (int i = 0; i < mu.length(); ++i) out *= n;
    return out;
  });
}

template <ExactScalar Scalar>
ClassFunction<Scalar> weingarten_by_characters(int k, const Scalar& n) {
  detail::require_degree(k);
  detail::require_invertible_gram(k, n);
  const ClassTable& table = class_table(k);
  Vector<Scalar> coeffs(static_cast<Eigen::Index>(table.size()));
  for (std::size_t l = 0; l < table.size(); ++l) {
    const Scalar content = content_product(table.classes[l], n);
    coeffs(static_cast<Eigen::Index>(l)) =
        Scalar(Rational(static_cast<long>(table.dimensions[l]), static_cast<long>(table.order))) *
        reciprocal(content, "not invertible: content product vanishes at lambda=(" + table.classes[l].str() +
                                "), n=" + detail::dim_str(n));
  }
  return from_character_coefficients(k, coeffs);
}

template <ExactScalar Scalar>
ClassFunction<Scalar> weingarten_by_gram_inverse(int k, const Scalar& n, int dense_bound = kDefaultDenseBound) {
  detail::require_degree(k);
  detail::require_invertible_gram(k, n);
  detail::check_dense_bound(k, dense_bound);
  const ClassTable& table = class_table(k);
  const auto p = static_cast<Eigen::Index>(table.size());
  const ClassFunction<Scalar> gram = gram_function(k, n);
  // Column c is G * 1_{C_c}, assembled by direct summation over S_k.
  Matrix<Scalar> system(p, p);
  for (Eigen::Index c = 0; c < p; ++c) {
    ClassFunction<Scalar> indicator(k);
    indicator.set(table.classes[static_cast<std::size_t>(c)], Scalar(1));
    system.col(c) = convolve_direct(gram, indicator, dense_bound).values();
  }
  return ClassFunction<Scalar>(k, solve_exact(std::move(system), ClassFunction<Scalar>::delta(k).values()));
}

/// Raise_{k,n}(sigma) = sum_{t=0}^{fix sigma} (-1)^{k-t} C(fix sigma, t) / n^{up(k-t)}.
template <ExactScalar Scalar>
ClassFunction<Scalar> ascension(int k, const Scalar& n) {
  detail::require_degree(k);
  return ClassFunction<Scalar>::from_cycle_type(k, [&](const Partition& mu) {
    const int fix = mu.multiplicity(1);
    Scalar out(0);
    for (int t = 0; t <= fix; ++t) {
      const Scalar term = Scalar(binomial(fix, t)) *
                          reciprocal(rising_factorial(n, k - t), "ascension: rising factorial vanishes at n=" + detail::dim_str(n));
      if ((k - t) % 2 == 0) {
        out += term;
      } else {
        out -= term;
      }
    }
    return out;
  });
}

/// Lower_{k,n}(sigma) = sgn(sigma) sum_{t=0}^{fix sigma} C(fix sigma, t) / n^{down(k-t)}.
template <ExactScalar Scalar>
ClassFunction<Scalar> descension(int k, const Scalar& n) {
  detail::require_degree(k);
  if (auto v = ScalarTraits<Scalar>::integer_value(n); v && *v < k) {
    throw DomainError("descension requires k <= n (k=" + std::to_string(k) + ", n=" + std::to_string(*v) + ")");
  }
  return ClassFunction<Scalar>::from_cycle_type(k, [&](const Partition& mu) {
    const int fix = mu.multiplicity(1);
    Scalar out(0);
    for (int t = 0; t <= fix; ++t) {
      out += Scalar(binomial(fix, t)) *
             reciprocal(falling_factorial(n, k - t), "descension: falling factorial vanishes at n=" + detail::dim_str(n));
    }
    return (k - mu.length()) % 2 == 0 ? out : -out;
  });
}

/// Canonical pseudo-inverse W_{k,n}: the character sum restricted to l(lambda) <= n.
ClassFunction<Rational> pseudo_weingarten(int k, long n);

/// Wg_{n,n} on all of S_n by the equal-dimension kernel recursion, starting from Wg_{1,1} = 1.
GroupFunction<Rational> weingarten_equal_dimension(int n, int dense_bound = kDefaultDenseBound);

/// Wg_{k,n}: Raise convolutions from n down to k, then the kernel recursion from k down to 1.
ClassFunction<Rational> weingarten_by_ladder(int k, long n, int dense_bound = kDefaultDenseBound);

/// a_n(pi, tau) for pi in S_n, tau in S_{n-1}.
Rational ascension_kernel(const Permutation& pi, const Permutation& tau);

/// Raise_{k,n}(sigma) as the sphere expectation E[prod_i (delta_{i,sigma(i)} - x_i conj(x_{sigma(i)}))],
/// expanded over subsets of fixed points. Requires k <= n.
Rational ascension_via_sphere(long n, const Permutation& sigma);

template <ExactScalar Scalar>
ClassFunction<Scalar> weingarten_by_recursion(int k, const Scalar& n, const EngineOptions& options = {}) {
  detail::require_degree(k);
  detail::require_invertible_gram(k, n);
  const auto top = ScalarTraits<Scalar>::integer_value(n);
  if (!top || *top < k) {
    // Formal or non-integral dimension: a single ascension step from n-1.
    return convolve(ascension(k, n), weingarten_by_characters(k, n - Scalar(1)));
  }
  ClassFunction<Scalar> wg;
  if (options.base == RecursionBase::Ladder) {
    const ClassFunction<Rational> base = project_to_class(weingarten_equal_dimension(k, options.dense_bound));
    wg = ClassFunction<Scalar>::from_cycle_type(k, [&](const Partition& mu) { return Scalar(base(mu)); });
  } else {
    wg = weingarten_by_characters(k, Scalar(k));
  }
  for (long m = k + 1; m <= *top; ++m) wg = convolve(ascension(k, Scalar(m)), wg);
  return wg;
}

template <ExactScalar Scalar>
ClassFunction<Scalar> weingarten(int k, const Scalar& n, WgRoute route = WgRoute::CharacterExpansion,
                                 const EngineOptions& options = {}) {
  switch (route) {
    case WgRoute::CharacterExpansion:
      return weingarten_by_characters(k, n);
    case WgRoute::GramInverse:
      return weingarten_by_gram_inverse(k, n, options.dense_bound);
    case WgRoute::RecursiveAscension:
      return weingarten_by_recursion(k, n, options);
  }
  throw std::invalid_argument("unknown Weingarten route");
}

}  // namespace weingarten

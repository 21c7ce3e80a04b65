#pragma once

#include <cstddef>
#include <span>

#include "weingarten/class_function.hpp"
#include "weingarten/moment_query.hpp"
#include "weingarten/permutation.hpp"
#include "weingarten/rational.hpp"
#include "weingarten/scalar.hpp"

namespace weingarten {

inline constexpr std::size_t kDefaultRTermBound = 1'000'000;
inline constexpr std::size_t kDefaultUTermBound = 10'000'000;

/// E[prod_i x_i^{m_i} conj(x_i)^{l_i}] for x uniform on the unit sphere of C^n.
/// Shorter multi-indices are padded with zeros; longer ones must vanish past n.
Rational sphere_moment(std::span<const int> m, std::span<const int> l, long n);

/// Moments of sphere entries x[i] (and conjugates).
template <ExactScalar Scalar>
Scalar moment_x(const MomentQuery& query, const Scalar& n);

/// Moments of the rank-one matrix P = I - R. With Scalar = RationalFunction and a
/// non-constant dimension, index tokens are kept symbolic: distinct tokens are
/// distinct indices and only "n" is the last one.
template <ExactScalar Scalar>
Scalar moment_p(const MomentQuery& query, const Scalar& n);

/// Moments mixing entries of R and P from one reflection. Diagonal r_ss = 1 - p_ss
/// is expanded binomially; off-diagonal r_ij = -p_ij.
template <ExactScalar Scalar>
Scalar moment_r(const MomentQuery& query, const Scalar& n, std::size_t term_bound = kDefaultRTermBound);

/// E[r_{1 sigma(1)} ... r_{k sigma(k)}] for sigma in S_k; requires k < n.
Rational permutation_r_moment(const Permutation& sigma, long n);

/// Haar moment via the Weingarten sum over pairs of index matchings. Uses Wg_{k,n}
/// for k <= n and the pseudo-inverse W_{k,n} otherwise (numeric dimension only).
template <ExactScalar Scalar>
Scalar moment_u_weingarten(const MomentQuery& query, const Scalar& n, int dense_bound = kDefaultDenseBound);

/// Haar moment via U = R (V + 1): expands over intermediate indices, takes the
/// R-expectation exactly and recurses on V in U(n-1). Base case U(1).
Rational moment_u_recursive(const MomentQuery& query, long n, std::size_t term_bound = kDefaultUTermBound);

/// Dispatches on query.target(); U-moments go through the Weingarten sum.
template <ExactScalar Scalar>
Scalar exact_moment(const MomentQuery& query, const Scalar& n, int dense_bound = kDefaultDenseBound);

extern template Rational moment_x<Rational>(const MomentQuery&, const Rational&);
extern template RationalFunction moment_x<RationalFunction>(const MomentQuery&, const RationalFunction&);
extern template Rational moment_p<Rational>(const MomentQuery&, const Rational&);
extern template RationalFunction moment_p<RationalFunction>(const MomentQuery&, const RationalFunction&);
extern template Rational moment_r<Rational>(const MomentQuery&, const Rational&, std::size_t);
extern template RationalFunction moment_r<RationalFunction>(const MomentQuery&, const RationalFunction&, std::size_t);
extern template Rational moment_u_weingarten<Rational>(const MomentQuery&, const Rational&, int);
extern template RationalFunction moment_u_weingarten<RationalFunction>(const MomentQuery&, const RationalFunction&, int);
extern template Rational exact_moment<Rational>(const MomentQuery&, const Rational&, int);
extern template RationalFunction exact_moment<RationalFunction>(const MomentQuery&, const RationalFunction&, int);

}  // namespace weingarten

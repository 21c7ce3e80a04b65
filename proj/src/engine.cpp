#include "weingarten/engine.hpp"

#include <vector>

#include "weingarten/moments.hpp"

namespace weingarten {

std::string to_string(WgRoute route) {
  switch (route) {
    case WgRoute::CharacterExpansion:
      return "char";
    case WgRoute::GramInverse:
      return "gram";
    case WgRoute::RecursiveAscension:
      return "recursive";
  }
  return "unknown";
}

ClassFunction<Rational> pseudo_weingarten(int k, long n) {
  detail::require_degree(k);
  if (n < 1) throw DomainError("pseudo_weingarten requires n >= 1");
  const ClassTable& table = class_table(k);
  Vector<Rational> coeffs = Vector<Rational>::Zero(static_cast<Eigen::Index>(table.size()));
  for (std::size_t l = 0; l < table.size(); ++l) {
    const Partition& lambda = table.classes[l];
    if (lambda.length() > n) continue;
    coeffs(static_cast<Eigen::Index>(l)) = Rational(static_cast<long>(table.dimensions[l]), static_cast<long>(table.order)) /
                                           content_product(lambda, Rational(n));
  }
  return from_character_coefficients(k, coeffs);
}

namespace {

// a_n as a function of the joint fixed-point count f.
std::vector<Rational> kernel_by_fixed_points(long n) {
  std::vector<Rational> out;
  for (long f = 0; f <= n - 1; ++f) {
    Rational a;
    for (long t = 0; t <= f; ++t) {
      const Rational term = binomial(static_cast<int>(f), static_cast<int>(t)) /
                            rising_factorial(Rational(n), static_cast<int>(n - t));
      if ((n - t + 1) % 2 == 0) {
        a += term;
      } else {
        a -= term;
      }
    }
    out.push_back(a);
  }
  return out;
}

}  // namespace

Rational ascension_kernel(const Permutation& pi, const Permutation& tau) {
  const long n = pi.degree();
  if (n < 2) throw std::invalid_argument("ascension_kernel requires pi in S_n with n >= 2");
  const int f = joint_fixed_points(pi, tau);
  return kernel_by_fixed_points(n)[static_cast<std::size_t>(f)];
}

GroupFunction<Rational> weingarten_equal_dimension(int n, int dense_bound) {
  detail::require_degree(n);
  detail::check_dense_bound(n, dense_bound);
  Vector<Rational> previous = Vector<Rational>::Ones(1);  // Wg_{1,1}(e_1) = 1
  for (int m = 2; m <= n; ++m) {
    const std::vector<Rational> kernel = kernel_by_fixed_points(m);
    const DenseTable& upper = dense_table(m);
    const DenseTable& lower = dense_table(m - 1);
    Vector<Rational> next(static_cast<Eigen::Index>(upper.elements.size()));
    // Matrix-free product with the kernel: group the tau-sum by joint fixed points.
    std::vector<Rational> by_fix(static_cast<std::size_t>(m));
    for (std::size_t p = 0; p < upper.elements.size(); ++p) {
      std::fill(by_fix.begin(), by_fix.end(), Rational(0));
      const Permutation& pi = upper.elements[p];
      for (std::size_t t = 0; t < lower.elements.size(); ++t) {
        const Rational& w = previous(static_cast<Eigen::Index>(t));
        if (w.is_zero()) continue;
        by_fix[static_cast<std::size_t>(joint_fixed_points(pi, lower.elements[t]))] += w;
      }
      Rational acc;
      for (int f = 0; f < m; ++f) acc += kernel[static_cast<std::size_t>(f)] * by_fix[static_cast<std::size_t>(f)];
      next(static_cast<Eigen::Index>(p)) = acc;
    }
    previous = std::move(next);
  }
  return GroupFunction<Rational>(n, std::move(previous));
}

ClassFunction<Rational> weingarten_by_ladder(int k, long n, int dense_bound) {
  detail::require_degree(k);
  if (n < k) throw DomainError("ladder requires 1 <= k <= n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
  ClassFunction<Rational> wg = project_to_class(weingarten_equal_dimension(k, dense_bound));
  for (long m = k + 1; m <= n; ++m) wg = convolve(ascension(k, Rational(m)), wg);
  return wg;
}

Rational ascension_via_sphere(long n, const Permutation& sigma) {
  const int k = sigma.degree();
  if (k > n) {
    throw DomainError("ascension_via_sphere requires k <= n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }
  std::vector<int> fixed;
  for (int i = 1; i <= k; ++i) {
    if (sigma(i) == i) fixed.push_back(i);
  }
  // Each subset D of Fix(sigma) picks the delta term on D and -x_i conj(x_sigma(i)) elsewhere.
  Rational total;
  const std::size_t subsets = std::size_t{1} << fixed.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<bool> take_delta(static_cast<std::size_t>(k) + 1, false);
    int deltas = 0;
    for (std::size_t b = 0; b < fixed.size(); ++b) {
      if (mask & (std::size_t{1} << b)) {
        take_delta[static_cast<std::size_t>(fixed[b])] = true;
        ++deltas;
      }
    }
    std::vector<int> m(static_cast<std::size_t>(n), 0);
    std::vector<int> l(static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= k; ++i) {
      if (take_delta[static_cast<std::size_t>(i)]) continue;
      ++m[static_cast<std::size_t>(i - 1)];
      ++l[static_cast<std::size_t>(sigma(i) - 1)];
    }
    const Rational term = sphere_moment(m, l, n);
    if ((k - deltas) % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

}  // namespace weingarten

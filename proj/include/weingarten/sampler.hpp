#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "weingarten/moment_query.hpp"

namespace weingarten {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kResampleEpsilon = 1e-12;

/// Seeded generator; (seed, stream) pairs give independent reproducible streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);
  /// Standard complex gaussian: E|z|^2 = 1.
  Complex complex_gaussian();
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Uniform point on the unit sphere of C^n by normalizing complex gaussians.
ComplexVector sample_sphere(int n, Rng& rng);

/// As sample_sphere, redrawing while |1 - x_n| < epsilon.
ComplexVector sample_sphere_off_pole(int n, Rng& rng, double epsilon = kResampleEpsilon);

/// The complex reflection with last column x. Returns the identity when
/// |1 - x_n| < epsilon. Throws DomainError if |‖x‖ - 1| > 1e-10.
ComplexMatrix build_reflection(const ComplexVector& x, double epsilon = kResampleEpsilon);

/// V (+) I_{n - size(V)}.
ComplexMatrix embed(const ComplexMatrix& v, int n);

/// g_1, ..., g_n with g_1 a uniform phase and g_m = R_m (g_{m-1} (+) 1).
std::vector<ComplexMatrix> sample_virtual_isometry(int n, Rng& rng, double epsilon = kResampleEpsilon);

/// Haar unitary in U(n): the last element of sample_virtual_isometry.
ComplexMatrix sample_haar_unitary(int n, Rng& rng, double epsilon = kResampleEpsilon);

/// (a_ij + a_in a_nj / (1 - a_nn))_{i,j<n}; the top-left block when |1 - a_nn| < epsilon.
ComplexMatrix neretin_project(const ComplexMatrix& g, double epsilon = kResampleEpsilon);

/// max_ij |(M^* M - I)_ij|.
double unitarity_defect(const ComplexMatrix& m);

struct SamplerConfig {
  std::uint64_t seed = 0;
  std::size_t samples = 100'000;
  int workers = 1;
  double resample_epsilon = kResampleEpsilon;
};

struct MomentEstimate {
  Complex mean;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::string query;
};

/// Value of the query monomial on one draw. `x` feeds X entries, `m` feeds the
/// matrix entries (R, P = I - R, or U).
Complex evaluate_monomial(const MomentQuery& query, const ComplexVector& x, const ComplexMatrix& m, long n);

/// Sample mean and unbiased standard error over config.samples independent draws.
/// X, P and R queries draw one reflection per sample; U queries draw a Haar unitary.
/// Bit-identical for a fixed (seed, workers).
MomentEstimate estimate_moment(const MomentQuery& query, long n, const SamplerConfig& config);

/// |mean - exact| / standard_error (infinite when the error is zero and the mean is off).
double z_score(const MomentEstimate& estimate, Complex exact);

/// {query, n, N, seed, mean: {re, im}, stderr, exact, z_score} as JSON text.
std::string run_report_json(const MomentEstimate& estimate, long n, std::uint64_t seed,
                            const std::optional<std::string>& exact, std::optional<Complex> exact_value);

}  // namespace weingarten

#include <cmath>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "weingarten/errors.hpp"
#include "weingarten/sampler.hpp"

using namespace weingarten;

namespace {

constexpr double kTol = 1e-10;

// Mean and standard error of a real statistic over independent draws.
struct Sample {
  double mean = 0.0;
  double se = 0.0;
};

template <class F>
Sample sample_statistic(std::size_t count, F draw) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t s = 0; s < count; ++s) {
    const double v = draw();
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / static_cast<double>(count);
  const double var = (sum_sq - static_cast<double>(count) * mean * mean) / static_cast<double>(count - 1);
  return {mean, std::sqrt(var / static_cast<double>(count))};
}

bool within(const MomentEstimate& e, Complex exact, double k) { return std::abs(e.mean - exact) <= k * e.standard_error; }

ComplexMatrix random_unitary(int n, Rng& rng) { return sample_haar_unitary(n, rng); }

}  // namespace

TEST_CASE("sphere samples are unit vectors") {
  Rng rng(1);
  for (int n = 1; n <= 6; ++n) {
    for (int t = 0; t < 50; ++t) CHECK(std::abs(sample_sphere(n, rng).norm() - 1.0) < kTol);
  }
  // On C^1 the sphere is the unit circle.
  const auto z = sample_sphere(1, rng);
  CHECK(z.size() == 1);
  CHECK(std::abs(std::abs(z(0)) - 1.0) < kTol);
  CHECK_THROWS(sample_sphere(0, rng));
}

TEST_CASE("sphere moments by simulation") {
  Rng rng(2);
  const auto a = sample_statistic(100'000, [&] { return std::norm(sample_sphere(4, rng)(0)); });
  CHECK(std::abs(a.mean - 0.25) <= 4 * a.se);
  const auto b = sample_statistic(100'000, [&] {
    const auto x = sample_sphere(3, rng);
    return std::norm(x(0) * x(1));
  });
  CHECK(std::abs(b.mean - 1.0 / 12.0) <= 4 * b.se);
}

TEST_CASE("reflection construction") {
  Rng rng(3);
  ComplexVector en = ComplexVector::Zero(4);
  en(3) = 1.0;
  CHECK(build_reflection(en).isApprox(ComplexMatrix::Identity(4, 4)));
  ComplexVector one(1);
  one(0) = Complex(0.6, 0.8);
  const ComplexMatrix r1 = build_reflection(one);
  CHECK(std::abs(r1(0, 0) - one(0)) < kTol);

  for (int t = 0; t < 200; ++t) {
    const ComplexVector x = sample_sphere_off_pole(5, rng);
    const ComplexMatrix r = build_reflection(x);
    CHECK(unitarity_defect(r) <= kTol);
    CHECK((r.col(4) - x).cwiseAbs().maxCoeff() <= kTol);
    // I - R has rank one.
    const Eigen::JacobiSVD<ComplexMatrix> svd(ComplexMatrix::Identity(5, 5) - r);
    CHECK(svd.singularValues()(1) <= kTol);
  }
  CHECK_THROWS_AS(build_reflection(2.0 * en), DomainError);
}

TEST_CASE("Haar unitaries") {
  Rng rng(4);
  const ComplexMatrix u1 = sample_haar_unitary(1, rng);
  CHECK(u1.rows() == 1);
  CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) < kTol);
  for (int n = 1; n <= 6; ++n) CHECK(unitarity_defect(sample_haar_unitary(n, rng)) <= 1e-10);
  const auto e = estimate_moment(MomentQuery::parse("u[1,1] u~[1,1]"), 3, {.seed = 5, .samples = 100'000});
  CHECK(within(e, 1.0 / 3.0, 4));
  const auto chain = sample_virtual_isometry(4, rng);
  REQUIRE(chain.size() == 4);
  for (int m = 1; m <= 4; ++m) CHECK(chain[static_cast<std::size_t>(m - 1)].rows() == m);
}

TEST_CASE("Neretin projection") {
  Rng rng(6);
  const ComplexMatrix v = random_unitary(2, rng);
  const ComplexMatrix g = embed(v, 3);
  CHECK(neretin_project(g) == v);
  CHECK(neretin_project(ComplexMatrix::Identity(4, 4)).isApprox(ComplexMatrix::Identity(3, 3)));
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix w = random_unitary(2, rng);
    const ComplexMatrix product = build_reflection(sample_sphere_off_pole(3, rng)) * embed(w, 3);
    const ComplexMatrix projected = neretin_project(product);
    CHECK((projected - w).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(unitarity_defect(projected) <= 1e-8);
  }
  CHECK_THROWS_AS(neretin_project(ComplexMatrix::Ones(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(neretin_project(ComplexMatrix::Identity(1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(neretin_project(2.0 * ComplexMatrix::Identity(3, 3)), DomainError);
}

TEST_CASE("each element of the sampled chain projects to its predecessor") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto chain = sample_virtual_isometry(6, rng);
    for (std::size_t m = 1; m < chain.size(); ++m) {
      CHECK((neretin_project(chain[m]) - chain[m - 1]).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
}

TEST_CASE("moment estimates") {
  const auto r = estimate_moment(MomentQuery::parse("r[1,1]^3"), 3, {.seed = 8, .samples = 100'000});
  CHECK(within(r, 0.4, 4));
  const auto p = estimate_moment(MomentQuery::parse("p[1,1]^2 p~[1,1]^2 p[3,3] p~[3,3]"), 3, {.seed = 9, .samples = 200'000});
  CHECK(within(p, 2.0 / 25.0, 5));
  const auto u = estimate_moment(MomentQuery::parse("u[1,1] u~[1,1]"), 2, {.seed = 10, .samples = 10'000});
  CHECK(within(u, 0.5, 4));
  const auto uu = estimate_moment(MomentQuery::parse("u[2,2] u[3,3] u~[2,3] u~[3,2]"), 3, {.seed = 11, .samples = 200'000, .workers = 4});
  CHECK(within(uu, -1.0 / 24.0, 5));
  CHECK(uu.samples == 200'000);
  CHECK_THROWS_AS(estimate_moment(MomentQuery::parse("r[1,1]"), 3, {.samples = 1}), DomainError);
  CHECK_THROWS_AS(estimate_moment(MomentQuery::parse("r[4,1]"), 3, {.samples = 10}), std::invalid_argument);
}

TEST_CASE("estimates are reproducible for a fixed seed and worker count") {
  const auto q = MomentQuery::parse("r[1,2] r~[1,2] r[n,n]");
  for (int workers : {1, 3}) {
    const SamplerConfig config{.seed = 12, .samples = 5'000, .workers = workers};
    const auto a = estimate_moment(q, 4, config);
    const auto b = estimate_moment(q, 4, config);
    CHECK(a.mean == b.mean);
    CHECK(a.standard_error == b.standard_error);
  }
  const auto c = estimate_moment(q, 4, {.seed = 13, .samples = 5'000});
  const auto d = estimate_moment(q, 4, {.seed = 12, .samples = 5'000});
  CHECK(c.mean != d.mean);
}

TEST_CASE("left translation preserves trace moments") {
  Rng rng(14);
  const ComplexMatrix w = random_unitary(3, rng);
  // E|tr U|^2 = 1 and E|tr U|^4 = 2 for n >= 2; both must survive U -> W U.
  const auto plain2 = sample_statistic(100'000, [&] { return std::norm(sample_haar_unitary(3, rng).trace()); });
  const auto moved2 = sample_statistic(100'000, [&] { return std::norm((w * sample_haar_unitary(3, rng)).trace()); });
  CHECK(std::abs(plain2.mean - 1.0) <= 5 * plain2.se);
  CHECK(std::abs(moved2.mean - 1.0) <= 5 * moved2.se);
  const auto moved4 = sample_statistic(100'000, [&] {
    const double t = std::norm((w * sample_haar_unitary(3, rng)).trace());
    return t * t;
  });
  CHECK(std::abs(moved4.mean - 2.0) <= 5 * moved4.se);
}

TEST_CASE("row orthonormality of sampled reflections, numerically") {
  Rng rng(15);
  for (int t = 0; t < 100; ++t) {
    const ComplexVector x = sample_sphere_off_pole(4, rng);
    const ComplexMatrix r = build_reflection(x);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        Complex acc;
        for (int p = 0; p < 3; ++p) acc += r(i, p) * std::conj(r(j, p));
        const Complex rhs = (i == j ? 1.0 : 0.0) - r(i, 3) * std::conj(r(j, 3));
        CHECK(std::abs(acc - rhs) <= kTol);
      }
    }
  }
}

TEST_CASE("JSON run report") {
  const auto e = estimate_moment(MomentQuery::parse("r[1,1]"), 3, {.seed = 16, .samples = 1'000});
  const auto j = nlohmann::json::parse(run_report_json(e, 3, 16, std::string("2/3"), Complex(2.0 / 3.0)));
  CHECK(j.at("query") == "r[1,1]");
  CHECK(j.at("n") == 3);
  CHECK(j.at("N") == 1000);
  CHECK(j.at("seed") == 16);
  CHECK(j.at("mean").contains("re"));
  CHECK(j.at("mean").contains("im"));
  CHECK(j.at("stderr").get<double>() > 0.0);
  CHECK(j.at("exact") == "2/3");
  CHECK(j.at("z_score").is_number());
  const auto bare = nlohmann::json::parse(run_report_json(e, 3, 16, std::nullopt, std::nullopt));
  CHECK(bare.at("exact").is_null());
  CHECK(bare.at("z_score").is_null());
}

#include "weingarten/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "weingarten/errors.hpp"

namespace weingarten {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Cascade (pairwise) summation with O(log N) state.
class PairwiseSum {
 public:
  void add(double v) {
    block_ += v;
    if (++in_block_ == kBlock) flush();
  }
  double total() const {
    double out = block_;
    for (double s : levels_) out += s;
    return out;
  }

 private:
  static constexpr int kBlock = 64;
  void flush() {
    double carry = block_;
    block_ = 0.0;
    in_block_ = 0;
    std::size_t level = 0;
    // levels_[i] holds a partial sum of 2^i blocks, or zero if the slot is free.
    for (;; ++level) {
      if (level == levels_.size()) {
        levels_.push_back(carry);
        occupied_.push_back(true);
        return;
      }
      if (!occupied_[level]) {
        levels_[level] = carry;
        occupied_[level] = true;
        return;
      }
      carry += levels_[level];
      levels_[level] = 0.0;
      occupied_[level] = false;
    }
  }

  double block_ = 0.0;
  int in_block_ = 0;
  std::vector<double> levels_;
  std::vector<bool> occupied_;
};

struct Accumulator {
  PairwiseSum re;
  PairwiseSum im;
  PairwiseSum sq;
  std::size_t count = 0;
  void add(Complex z) {
    re.add(z.real());
    im.add(z.imag());
    sq.add(std::norm(z));
    ++count;
  }
};

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

Complex Rng::complex_gaussian() {
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

ComplexVector sample_sphere(int n, Rng& rng) {
  if (n < 1) throw DomainError("sphere dimension must be >= 1");
  ComplexVector y(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) y(i) = rng.complex_gaussian();
    norm = y.norm();
  } while (norm == 0.0);
  return y / norm;
}

ComplexVector sample_sphere_off_pole(int n, Rng& rng, double epsilon) {
  ComplexVector x = sample_sphere(n, rng);
  while (std::abs(1.0 - x(n - 1)) < epsilon) x = sample_sphere(n, rng);
  return x;
}

ComplexMatrix build_reflection(const ComplexVector& x, double epsilon) {
  const Eigen::Index n = x.size();
  if (n < 1) throw std::invalid_argument("reflection needs a nonempty vector");
  if (std::abs(x.norm() - 1.0) > 1e-10) throw DomainError("reflection vector is not a unit vector");
  const Complex xn = x(n - 1);
  if (std::abs(1.0 - xn) < epsilon) return ComplexMatrix::Identity(n, n);
  const Complex denom = 1.0 - std::conj(xn);
  ComplexMatrix r(n, n);
  const auto head = x.head(n - 1);
  r.topLeftCorner(n - 1, n - 1) = ComplexMatrix::Identity(n - 1, n - 1) - head * head.adjoint() / denom;
  r.bottomLeftCorner(1, n - 1) = ((1.0 - xn) / denom) * head.adjoint();
  r.col(n - 1) = x;
  return r;
}

ComplexMatrix embed(const ComplexMatrix& v, int n) {
  if (v.rows() != v.cols() || v.rows() > n) throw std::invalid_argument("embed needs a square matrix of size <= n");
  ComplexMatrix out = ComplexMatrix::Identity(n, n);
  out.topLeftCorner(v.rows(), v.cols()) = v;
  return out;
}

std::vector<ComplexMatrix> sample_virtual_isometry(int n, Rng& rng, double epsilon) {
  if (n < 1) throw DomainError("unitary dimension must be >= 1");
  std::vector<ComplexMatrix> chain;
  chain.push_back(sample_sphere(1, rng));
  for (int m = 2; m <= n; ++m) {
    const ComplexMatrix r = build_reflection(sample_sphere_off_pole(m, rng, epsilon), epsilon);
    chain.push_back(r * embed(chain.back(), m));
  }
  return chain;
}

ComplexMatrix sample_haar_unitary(int n, Rng& rng, double epsilon) {
  return sample_virtual_isometry(n, rng, epsilon).back();
}

double unitarity_defect(const ComplexMatrix& m) {
  return (m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
}

ComplexMatrix neretin_project(const ComplexMatrix& g, double epsilon) {
  if (g.rows() != g.cols()) throw std::invalid_argument("Neretin projection needs a square matrix");
  const Eigen::Index n = g.rows();
  if (n < 2) throw std::invalid_argument("Neretin projection needs n >= 2");
  if (unitarity_defect(g) > 1e-8) throw DomainError("Neretin projection needs a unitary matrix");
  const Complex ann = g(n - 1, n - 1);
  if (std::abs(1.0 - ann) < epsilon) return g.topLeftCorner(n - 1, n - 1);
  return g.topLeftCorner(n - 1, n - 1) + g.topRightCorner(n - 1, 1) * g.bottomLeftCorner(1, n - 1) / (1.0 - ann);
}

Complex evaluate_monomial(const MomentQuery& query, const ComplexVector& x, const ComplexMatrix& m, long n) {
  Complex out(1.0, 0.0);
  for (const auto& f : query.factors()) {
    const long i = f.row.resolve(n) - 1;
    Complex entry;
    switch (f.kind) {
      case EntryKind::X:
        entry = x(i);
        break;
      case EntryKind::R:
      case EntryKind::U:
        entry = m(i, f.col.resolve(n) - 1);
        break;
      case EntryKind::P: {
        const long j = f.col.resolve(n) - 1;
        entry = (i == j ? 1.0 : 0.0) - m(i, j);
        break;
      }
    }
    if (f.conjugated) entry = std::conj(entry);
    for (int e = 0; e < f.exponent; ++e) out *= entry;
  }
  return out;
}

MomentEstimate estimate_moment(const MomentQuery& query, long n, const SamplerConfig& config) {
  if (config.samples < 2) throw DomainError("estimate_moment needs at least 2 samples");
  if (config.workers < 1) throw std::invalid_argument("worker count must be >= 1");
  if (n < 1) throw DomainError("dimension must be >= 1");
  for (const auto& f : query.factors()) {
    f.row.resolve(n);
    if (f.kind != EntryKind::X) f.col.resolve(n);
  }
  const bool haar = query.target() == EntryKind::U;
  const auto workers = static_cast<std::size_t>(config.workers);
  std::vector<Accumulator> partial(workers);
  auto run = [&](std::size_t w) {
    Rng rng(config.seed, w);
    const std::size_t begin = config.samples * w / workers;
    const std::size_t end = config.samples * (w + 1) / workers;
    const int dim = static_cast<int>(n);
    for (std::size_t s = begin; s < end; ++s) {
      if (haar) {
        const ComplexMatrix u = sample_haar_unitary(dim, rng, config.resample_epsilon);
        partial[w].add(evaluate_monomial(query, ComplexVector(), u, n));
      } else {
        const ComplexVector x = sample_sphere_off_pole(dim, rng, config.resample_epsilon);
        partial[w].add(evaluate_monomial(query, x, build_reflection(x, config.resample_epsilon), n));
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  Complex sum(0.0, 0.0);
  double sq = 0.0;
  for (const auto& a : partial) {
    sum += Complex(a.re.total(), a.im.total());
    sq += a.sq.total();
  }
  const auto count = static_cast<double>(config.samples);
  const Complex mean = sum / count;
  const double variance = std::max(0.0, (sq - count * std::norm(mean)) / (count - 1.0));
  return {mean, std::sqrt(variance / count), config.samples, query.str()};
}

double z_score(const MomentEstimate& estimate, Complex exact) {
  const double gap = std::abs(estimate.mean - exact);
  if (estimate.standard_error == 0.0) return gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return gap / estimate.standard_error;
}

std::string run_report_json(const MomentEstimate& estimate, long n, std::uint64_t seed,
                            const std::optional<std::string>& exact, std::optional<Complex> exact_value) {
  nlohmann::ordered_json j;
  j["query"] = estimate.query;
  j["n"] = n;
  j["N"] = estimate.samples;
  j["seed"] = seed;
  j["mean"] = {{"re", estimate.mean.real()}, {"im", estimate.mean.imag()}};
  j["stderr"] = estimate.standard_error;
  j["exact"] = exact ? nlohmann::ordered_json(*exact) : nlohmann::ordered_json(nullptr);
  j["z_score"] = exact_value ? nlohmann::ordered_json(z_score(estimate, *exact_value)) : nlohmann::ordered_json(nullptr);
  return j.dump(2);
}

}  // namespace weingarten

#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "weingarten/engine.hpp"
#include "weingarten/moments.hpp"

using namespace weingarten;
using RF = RationalFunction;

namespace {

const RF n = RF::variable();

RF sym(const std::string& text) { return RF::parse(text); }

RF p_sym(const std::string& q) { return moment_p(MomentQuery::parse(q), n); }
RF r_sym(const std::string& q) { return moment_r(MomentQuery::parse(q), n); }
Rational u_wg(const std::string& q, long dim) { return moment_u_weingarten(MomentQuery::parse(q), Rational(dim)); }
Rational u_rec(const std::string& q, long dim) { return moment_u_recursive(MomentQuery::parse(q), dim); }

std::vector<Index> labels(std::initializer_list<int> xs) {
  std::vector<Index> out;
  for (int x : xs) out.push_back(Index::label(x));
  return out;
}

}  // namespace

TEST_CASE("query parsing") {
  const auto q = MomentQuery::parse("p[1,2]^2 p~[n,2]^2 r[2,2]^3 p[1,1]");
  REQUIRE(q.factors().size() == 4);
  CHECK(q.factors()[1].conjugated);
  CHECK(q.factors()[1].row == Index::last());
  CHECK(q.factors()[2].exponent == 3);
  CHECK(MomentQuery::parse("u[n-1,n] u~[1,2]").str() == "u[n-1,n] u~[1,2]");
  CHECK(MomentQuery::parse("p[1,1] r[2,2]").target() == EntryKind::R);
  CHECK(MomentQuery::parse("p[1,1]").target() == EntryKind::P);
  CHECK_THROWS_AS(MomentQuery::parse("u[1,1] p[1,1]"), std::invalid_argument);
  CHECK_THROWS_AS(MomentQuery::parse("x[1] p[1,1]"), std::invalid_argument);
  CHECK_THROWS_AS(MomentQuery::parse("q[1,1]"), std::invalid_argument);
  CHECK_THROWS_AS(MomentQuery::parse("p[1]"), std::invalid_argument);
  CHECK_THROWS_AS(MomentQuery::parse("p[0,1]"), std::invalid_argument);
  CHECK_THROWS_AS(MomentQuery::from_words(EntryKind::P, labels({1, 2}), labels({1}), {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(moment_p(MomentQuery::parse("p[4,1]"), Rational(3)), std::invalid_argument);
}

TEST_CASE("sphere moments") {
  const std::vector<int> e1{1, 0, 0};
  CHECK(sphere_moment(e1, e1, 3) == Rational(1, 3));
  const std::vector<int> a{2, 0};
  const std::vector<int> b{0, 2};
  CHECK(sphere_moment(a, b, 2) == Rational(0));
  const std::vector<int> c{2, 1};
  CHECK(sphere_moment(c, c, 2) == Rational(1, 12));
  CHECK(sphere_moment(std::vector<int>{}, std::vector<int>{}, 4) == Rational(1));
  CHECK(moment_x(MomentQuery::parse("x[1] x[2] x~[1] x~[2]"), Rational(3)) == Rational(1, 12));
  CHECK(moment_x(MomentQuery::parse("x[1]^2 x~[1]^2"), n) == sym("2/(n*(n+1))"));
}

TEST_CASE("rank-one moments: worked examples") {
  CHECK(p_sym("p[1,1]^2 p[n,n] p~[1,1]^2 p~[n,n]") == sym("24/(n*(n+1)*(n+2)^2)"));
  CHECK(p_sym("p[1,2]^2 p[n,1]^2 p[n,n]^3 p~[n,2]^2") == sym("4/(n*(n+1)*(n+5)*(n+6))"));
  CHECK(p_sym("p[1,2] p[2,1] p[n,n]^4 p~[3,3]^2 p~[n,n]^3") == sym("2*(n+6)/(n*(n+1)*(n+2)*(n+3)*(n+4))"));
  for (int k = 1; k <= 4; ++k) {
    std::string q;
    for (int i = 1; i <= k; ++i) q += "p[" + std::to_string(i) + "," + std::to_string(i) + "] p~[" + std::to_string(i) + "," + std::to_string(i) + "] ";
    CHECK(p_sym(q) == RF(Rational(1L << k)) / (rising_factorial(n, k) * rising_factorial(n, k)));
  }
  CHECK(p_sym("") == RF(1));
  CHECK(moment_p(MomentQuery::parse("p[1,1]^2 p[3,3] p~[1,1]^2 p~[3,3]"), Rational(3)) == Rational(2, 25));
}

TEST_CASE("rank-one moments match the direct formula on random words") {
  std::mt19937_64 rng(31);
  int nonzero = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int dim = std::uniform_int_distribution<int>(1, 6)(rng);
    const auto w = oracle::random_words(rng, dim, 4);
    const MomentQuery query(oracle::p_factors(w));
    const Rational got = moment_p(query, Rational(dim));
    CHECK(got == oracle::p_moment(w, dim));
    if (!oracle::balance(w)) CHECK(got.is_zero());
    nonzero += !got.is_zero();
  }
  CHECK(nonzero > 50);
}

TEST_CASE("word form and exponent-matrix form agree") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = std::uniform_int_distribution<int>(2, 5)(rng);
    const auto w = oracle::random_words(rng, dim, 4);
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(dim, dim);
    Eigen::MatrixXi b = Eigen::MatrixXi::Zero(dim, dim);
    for (std::size_t h = 0; h < w.i.size(); ++h) ++a(w.i[h] - 1, w.j[h] - 1);
    for (std::size_t h = 0; h < w.ic.size(); ++h) ++b(w.ic[h] - 1, w.jc[h] - 1);
    const Rational from_words = moment_p(MomentQuery(oracle::p_factors(w)), Rational(dim));
    const Rational from_matrices = moment_p(MomentQuery::from_exponents(EntryKind::P, a, b), Rational(dim));
    CHECK(from_words == from_matrices);
    // Matrix form of the vanishing criterion: a_{k.} + b_{.k} = a_{.k} + b_{k.} for every k.
    const bool balanced = ((a.rowwise().sum() + b.colwise().sum().transpose()).array() ==
                           (a.colwise().sum().transpose() + b.rowwise().sum()).array()).all();
    CHECK(balanced == !from_words.is_zero());
  }
}

TEST_CASE("reflection moments: worked examples") {
  for (int q = 1; q <= 6; ++q) {
    CHECK(r_sym("r[1,1]^" + std::to_string(q)) == (n - RF(1)) / (n + RF(q - 1)));
    CHECK(r_sym("r[n,n]^" + std::to_string(q)) == RF(0));
  }
  CHECK(r_sym("r[1,1] r[n,n] r~[1,1] r~[n,n]") == sym("(n^2-n+2)/(n^2*(n+1))"));
  CHECK(r_sym("r[1,2]^2 r[n,1]^2 r~[n,2]^2 r[2,2]^3") == sym("4/(n*(n+4)*(n+5)*(n+6))"));
  CHECK(r_sym("p[1,2]^2 p[n,1]^2 p~[n,2]^2 r[2,2]^3") == sym("4/(n*(n+4)*(n+5)*(n+6))"));
  CHECK(r_sym("r[1,2]^2 r[n,1]^2 r~[n,2]^2 r[n,n]^3") == RF(96) / rising_factorial(n, 7));
  CHECK(r_sym("r[n,n] r~[n,n]") == RF(1) / n);
  CHECK(r_sym("p[1,1] r[n,n] r~[n,n]") == RF(1) / (n * (n + RF(1))));
  CHECK(r_sym("p[1,1] p~[1,1] r[n,n] r~[n,n]") == RF(2) / (n * n * (n + RF(1))));
  CHECK(moment_r(MomentQuery::parse("r[1,1]^3"), Rational(3)) == Rational(2, 5));
  CHECK_THROWS_AS(moment_r(MomentQuery::parse("r[1,1]^20 r[2,2]^20 r~[1,1]^20"), Rational(4), 1000), DomainError);
}

TEST_CASE("reflection moments match the closed forms on random queries") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = std::uniform_int_distribution<int>(2, 7)(rng);
    const auto w = oracle::random_words(rng, dim, 4);
    const int s = std::uniform_int_distribution<int>(1, dim)(rng);
    const int q = std::uniform_int_distribution<int>(1, 4)(rng);
    auto power = oracle::p_factors(w);
    power.push_back({EntryKind::R, Index::label(s), Index::label(s), false, q});
    CHECK(moment_r(MomentQuery(power), Rational(dim)) == oracle::p_moment_times_rss_power(w, s, q, dim));
    auto abs2 = oracle::p_factors(w);
    abs2.push_back({EntryKind::R, Index::label(s), Index::label(s), false, 1});
    abs2.push_back({EntryKind::R, Index::label(s), Index::label(s), true, 1});
    CHECK(moment_r(MomentQuery(abs2), Rational(dim)) == oracle::p_moment_times_rss_abs2(w, s, dim));
  }
}

TEST_CASE("the last factor can annihilate the moment") {
  // r_nn = x_n, so an unmatched power of x_n kills the phase average.
  CHECK(moment_r(MomentQuery::parse("p[n,n] r[n,n]^2"), Rational(4)) == Rational(0));
  CHECK(r_sym("r[n,n]^3 r~[n,n]") == RF(0));
  CHECK(r_sym("r[n,n]^2 r~[n,n]^2") == RF(2) / (n * (n + RF(1))));
}

TEST_CASE("permutation products of reflection entries") {
  CHECK(permutation_r_moment(Permutation::identity(2), 3) == Rational(5, 12));
  CHECK(permutation_r_moment(Permutation::parse("2 3 1"), 5) == Rational(-1, 210));
  std::mt19937_64 rng(43);
  const auto perms = all_permutations(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto& sigma = perms[rng() % perms.size()];
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(6, 6);
    for (int i = 1; i <= 4; ++i) a(i - 1, sigma(i) - 1) = 1;
    const Rational via_matrix = moment_r(MomentQuery::from_exponents(EntryKind::R, a, Eigen::MatrixXi::Zero(6, 6)), Rational(6));
    CHECK(permutation_r_moment(sigma, 6) == via_matrix);
    CHECK(via_matrix == oracle::raise_value(4, sigma.fixed_points(), 6));
  }
  for (int k = 1; k <= 4; ++k) {
    for (long dim = k + 1; dim <= 6; ++dim) {
      const auto raise = ascension(k, Rational(dim));
      for (const auto& sigma : all_permutations(k)) CHECK(permutation_r_moment(sigma, dim) == raise(sigma.cycle_type()));
    }
  }
  CHECK_THROWS_AS(permutation_r_moment(Permutation::identity(3), 3), DomainError);
}

TEST_CASE("row orthogonality of the reflection inside expectations") {
  // E[(sum_{p<n} r_ip conj(r_jp)) M] = delta_ij E[M] - E[r_in conj(r_jn) M].
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = std::uniform_int_distribution<int>(2, 5)(rng);
    const int i = std::uniform_int_distribution<int>(1, dim)(rng);
    const int j = std::uniform_int_distribution<int>(1, dim)(rng);
    std::vector<Factor> m;
    const int len = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int h = 0; h < len; ++h) {
      m.push_back({EntryKind::R, Index::label(std::uniform_int_distribution<int>(1, dim)(rng)),
                   Index::label(std::uniform_int_distribution<int>(1, dim)(rng)), rng() % 2 == 0, 1});
    }
    auto with = [&](int row1, int col1, int row2, int col2) {
      auto f = m;
      f.push_back({EntryKind::R, Index::label(row1), Index::label(col1), false, 1});
      f.push_back({EntryKind::R, Index::label(row2), Index::label(col2), true, 1});
      return moment_r(MomentQuery(f), Rational(dim));
    };
    Rational lhs;
    for (int p = 1; p < dim; ++p) lhs += with(i, p, j, p);
    const Rational base = moment_r(MomentQuery(m), Rational(dim));
    CHECK(lhs == (i == j ? base : Rational(0)) - with(i, dim, j, dim));
  }
}

TEST_CASE("Haar moments via the Weingarten sum") {
  CHECK(u_wg("u[n-1,n-1] u[n,n] u~[n-1,n] u~[n,n-1]", 4) == Rational(-1, 60));
  for (long dim = 1; dim <= 5; ++dim) CHECK(u_wg("u[1,1] u~[1,1]", dim) == Rational(1, dim));
  CHECK(u_wg("u[1,1] u~[1,2]", 3) == Rational(0));
  CHECK(u_wg("u[1,1] u[1,1]", 3) == Rational(0));
  CHECK(u_wg("", 3) == Rational(1));
  // Degree above n goes through the pseudo-inverse: |u11|^4 at n = 1 is 1.
  CHECK(u_wg("u[1,1]^3 u~[1,1]^3", 1) == Rational(1));
  CHECK(u_wg("u[1,1]^2 u~[1,1]^2", 2) == Rational(1, 3));
  CHECK(moment_u_weingarten(MomentQuery::parse("u[n-1,n-1] u[n,n] u~[n-1,n] u~[n,n-1]"), n) == sym("-1/((n-1)*n*(n+1))"));
  CHECK_THROWS_AS(moment_u_weingarten(MomentQuery::parse("u[1,1]^8 u~[1,1]^8"), Rational(9)), DomainError);
}

TEST_CASE("Haar moments via the reflection recursion") {
  CHECK(u_rec("u[n-1,n-1] u[n,n] u~[n-1,n] u~[n,n-1]", 3) == Rational(-1, 24));
  CHECK(u_rec("u[n-1,n-1] u[n,n] u~[n-1,n-1] u~[n,n]", 3) == Rational(1, 8));
  CHECK(u_rec("u[1,1] u~[1,1]", 2) == Rational(1, 2));
  CHECK(u_rec("u[1,1]^2 u~[1,1]", 3) == Rational(0));
  CHECK_THROWS_AS(moment_u_recursive(MomentQuery::parse("u[1,1]^2 u[2,2]^2 u[3,3]^2 u~[1,1]^2 u~[2,2]^2 u~[3,3]^2"), 6, 10), DomainError);
}

TEST_CASE("the two Haar routes agree on every degree-1 and degree-2 query for small n") {
  for (long dim = 1; dim <= 3; ++dim) {
    const long cells = dim * dim;
    for (long code = 0; code < cells * cells; ++code) {
      const std::vector<Index> i{Index::label(static_cast<int>(code / cells / dim + 1))};
      const std::vector<Index> j{Index::label(static_cast<int>(code / cells % dim + 1))};
      const std::vector<Index> ic{Index::label(static_cast<int>(code % cells / dim + 1))};
      const std::vector<Index> jc{Index::label(static_cast<int>(code % dim + 1))};
      const auto q = MomentQuery::from_words(EntryKind::U, i, j, ic, jc);
      CHECK(moment_u_recursive(q, dim) == moment_u_weingarten(q, Rational(dim)));
    }
  }
  for (long dim = 2; dim <= 4; ++dim) {
    // Indices drawn from {1, n-1, n} (for n = 2, {1, 2}); 3^8 degree-2 words.
    std::vector<int> pool{1, static_cast<int>(dim - 1), static_cast<int>(dim)};
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    const int base = static_cast<int>(pool.size());
    int total = 1;
    for (int h = 0; h < 8; ++h) total *= base;
    for (int code = 0; code < total; ++code) {
      std::vector<Index> w;
      int c = code;
      for (int h = 0; h < 8; ++h, c /= base) w.push_back(Index::label(pool[c % base]));
      const auto q = MomentQuery::from_words(EntryKind::U, {w[0], w[1]}, {w[2], w[3]}, {w[4], w[5]}, {w[6], w[7]});
      CHECK(moment_u_recursive(q, dim) == moment_u_weingarten(q, Rational(dim)));
    }
  }
}

TEST_CASE("the two Haar routes agree on degree-3 spot checks at n = 4") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Index> w;
    for (int h = 0; h < 12; ++h) w.push_back(Index::label(std::uniform_int_distribution<int>(1, 4)(rng)));
    // Make the conjugated words a shuffle of the unconjugated ones half the time, so moments survive.
    if (trial % 2 == 0) {
      std::vector<int> perm{0, 1, 2};
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<int> perm2{0, 1, 2};
      std::shuffle(perm2.begin(), perm2.end(), rng);
      for (int h = 0; h < 3; ++h) {
        w[6 + h] = w[perm[h]];
        w[9 + h] = w[3 + perm2[h]];
      }
    }
    const auto q = MomentQuery::from_words(EntryKind::U, {w[0], w[1], w[2]}, {w[3], w[4], w[5]}, {w[6], w[7], w[8]},
                                           {w[9], w[10], w[11]});
    CHECK(moment_u_recursive(q, 4) == moment_u_weingarten(q, Rational(4)));
  }
}

TEST_CASE("exact_moment dispatches on the target") {
  CHECK(exact_moment(MomentQuery::parse("x[1] x~[1]"), Rational(5)) == Rational(1, 5));
  CHECK(exact_moment(MomentQuery::parse("p[1,1] p~[1,1]"), Rational(3)) == Rational(2, 9));
  CHECK(exact_moment(MomentQuery::parse("r[1,1]"), Rational(3)) == Rational(2, 3));
  CHECK(exact_moment(MomentQuery::parse("u[2,2] u[3,3] u~[2,3] u~[3,2]"), Rational(3)) == Rational(-1, 24));
  CHECK_THROWS_AS(exact_moment(MomentQuery::parse("r[1,1]"), Rational(1, 2)), DomainError);
}

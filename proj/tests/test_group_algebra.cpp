#include <random>

#include "doctest.h"
#include "weingarten/class_function.hpp"
#include "weingarten/engine.hpp"
#include "weingarten/serialize.hpp"

using namespace weingarten;
using RF = RationalFunction;

namespace {

ClassFunction<Rational> random_class_function(std::mt19937_64& rng, int k) {
  return ClassFunction<Rational>::from_cycle_type(k, [&](const Partition&) {
    return Rational(std::uniform_int_distribution<long>(-9, 9)(rng), std::uniform_int_distribution<long>(1, 4)(rng));
  });
}

// (f*g)(pi) = sum_sigma f(sigma) g(sigma^{-1} pi), summed over explicit permutations.
Rational naive_convolution_at(const ClassFunction<Rational>& f, const ClassFunction<Rational>& g, const Permutation& pi) {
  Rational acc;
  for (const auto& sigma : all_permutations(f.degree())) acc += f(sigma) * g(sigma.inverse() * pi);
  return acc;
}

ClassFunction<Rational> character_function(const Partition& lambda) {
  return ClassFunction<Rational>::from_cycle_type(lambda.weight(), [&](const Partition& mu) { return Rational(character(lambda, mu)); });
}

}  // namespace

TEST_CASE("delta is the identity element") {
  std::mt19937_64 rng(1);
  const auto f = random_class_function(rng, 4);
  CHECK(convolve(f, ClassFunction<Rational>::delta(4)) == f);
  CHECK(convolve(ClassFunction<Rational>::delta(4), f) == f);
  CHECK(ClassFunction<Rational>::delta(4)(Permutation::identity(4)) == Rational(1));
}

TEST_CASE("characters are orthogonal idempotents up to scale") {
  const int k = 3;
  for (const auto& lambda : partitions_of(k)) {
    for (const auto& mu : partitions_of(k)) {
      const auto prod = convolve(character_function(lambda), character_function(mu));
      if (lambda == mu) {
        const Rational scale = factorial(k) / Rational(static_cast<long>(dimension(lambda)));
        CHECK(prod == ClassFunction<Rational>::from_cycle_type(k, [&](const Partition& nu) {
          return scale * Rational(character(lambda, nu));
        }));
      } else {
        CHECK(prod == ClassFunction<Rational>(k));
      }
    }
  }
}

TEST_CASE("G_{2,2} * Wg_{2,2} = delta") {
  ClassFunction<Rational> wg(2);
  wg.set(Partition({1, 1}), Rational(1, 3));
  wg.set(Partition({2}), Rational(-1, 6));
  CHECK(convolve(gram_function(2, Rational(2)), wg) == ClassFunction<Rational>::delta(2));
}

TEST_CASE("character-basis convolution matches explicit group sums") {
  std::mt19937_64 rng(7);
  for (int k = 1; k <= 5; ++k) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto f = random_class_function(rng, k);
      const auto g = random_class_function(rng, k);
      const auto fast = convolve(f, g);
      CHECK(fast == convolve_direct(f, g));
      for (const auto& mu : partitions_of(k)) {
        std::vector<int> one_line;
        int start = 0;
        for (int len : mu.parts()) {
          for (int i = 0; i < len; ++i) one_line.push_back(start + (i + 1) % len + 1);
          start += len;
        }
        CHECK(fast(mu) == naive_convolution_at(f, g, Permutation(one_line)));
      }
    }
  }
}

TEST_CASE("convolution is associative") {
  std::mt19937_64 rng(13);
  for (int k = 1; k <= 5; ++k) {
    const auto f = random_class_function(rng, k);
    const auto g = random_class_function(rng, k);
    const auto h = random_class_function(rng, k);
    CHECK(convolve(convolve(f, g), h) == convolve(f, convolve(g, h)));
  }
}

TEST_CASE("dense convolution") {
  std::mt19937_64 rng(19);
  const auto f = random_class_function(rng, 4);
  const auto g = random_class_function(rng, 4);
  CHECK(project_to_class(convolve_dense(lift_to_dense(f), lift_to_dense(g))) == convolve(f, g));

  const auto delta5 = lift_to_dense(ClassFunction<Rational>::delta(5));
  const auto arbitrary = GroupFunction<Rational>::from_permutation(5, [](const Permutation& p) { return Rational(static_cast<long>(p.rank()) % 7 - 3); });
  CHECK(convolve_dense(delta5, arbitrary) == arbitrary);
  CHECK(convolve_dense(arbitrary, delta5) == arbitrary);

  const auto a = lift_to_dense(random_class_function(rng, 3));
  const auto b = lift_to_dense(random_class_function(rng, 3));
  CHECK(convolve_dense(a, b) == convolve_dense(b, a));

  CHECK_THROWS_WITH_AS(lift_to_dense(ClassFunction<Rational>::delta(8)), doctest::Contains("class-function"), DomainError);
  CHECK_THROWS_AS(convolve(ClassFunction<Rational>(2), ClassFunction<Rational>(3)), std::invalid_argument);
}

TEST_CASE("inversion") {
  const auto wg = invert(gram_function(2, Rational(5)));
  CHECK(wg(Partition({1, 1})) == Rational(1, 24));
  CHECK(wg(Partition({2})) == Rational(-1, 120));
  CHECK(invert(ClassFunction<Rational>::delta(4)) == ClassFunction<Rational>::delta(4));
  CHECK_THROWS_WITH_AS(invert(gram_function(3, Rational(2))), doctest::Contains("lambda=(1,1,1)"), DomainError);

  std::mt19937_64 rng(29);
  for (int k = 1; k <= 5; ++k) {
    const auto f = random_class_function(rng, k);
    ClassFunction<Rational> inverse;
    try {
      inverse = invert(f);
    } catch (const DomainError&) {
      continue;  // a random function may be singular
    }
    CHECK(convolve(inverse, f) == ClassFunction<Rational>::delta(k));
  }
  const RF n = RF::variable();
  for (int k = 1; k <= 4; ++k) CHECK(convolve(invert(gram_function(k, n)), gram_function(k, n)) == ClassFunction<RF>::delta(k));
}

TEST_CASE("lift and project") {
  CHECK(project_to_class(lift_to_dense(ClassFunction<Rational>::delta(4))) == ClassFunction<Rational>::delta(4));
  const auto sign = GroupFunction<Rational>::from_permutation(3, [](const Permutation& p) { return Rational(p.sign()); });
  CHECK(project_to_class(sign) == character_function(Partition({1, 1, 1})));

  // pi -> a_3(pi, tau) for a fixed tau is not constant on classes: find a witness pair first.
  const Permutation tau = Permutation::parse("2 1");
  bool witness = false;
  for (const auto& p : all_permutations(3)) {
    for (const auto& q : all_permutations(3)) {
      if (p.cycle_type() == q.cycle_type() && joint_fixed_points(p, tau) != joint_fixed_points(q, tau)) witness = true;
    }
  }
  REQUIRE(witness);
  const auto kernel = GroupFunction<Rational>::from_permutation(3, [&](const Permutation& p) { return ascension_kernel(p, tau); });
  CHECK_THROWS_WITH_AS(project_to_class(kernel), doctest::Contains("not a class function"), std::invalid_argument);
}

TEST_CASE("JSON serialization round trips") {
  const auto f = weingarten_by_characters(3, Rational(5));
  const auto j = to_json(f);
  CHECK(j["k"] == 3);
  CHECK(j["basis"] == "cycle-type");
  CHECK(j["values"]["1,1,1"] == f(Partition({1, 1, 1})).str());
  CHECK(class_function_from_json<Rational>(nlohmann::json::parse(j.dump())) == f);

  const auto g = weingarten_by_characters(3, RF::variable());
  CHECK(class_function_from_json<RF>(nlohmann::json::parse(to_json(g).dump())) == g);
  CHECK_THROWS(class_function_from_json<Rational>(nlohmann::json::parse(R"({"k":2,"values":{"3":"1"}})")));
}

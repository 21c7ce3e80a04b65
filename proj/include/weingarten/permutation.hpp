#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weingarten/partition.hpp"

namespace weingarten {

/// Element of S_k. All input and output is 1-based one-line notation:
/// position i holds sigma(i).
class Permutation {
 public:
  Permutation() = default;
  /// One-line images, 1-based; throws std::invalid_argument unless a bijection on {1..k}.
  explicit Permutation(const std::vector<int>& one_line);
  static Permutation identity(int k);
  /// Accepts "2 1 3" (one-line) or "(1 2)(3)" (cycle notation). For cycle
  /// notation the degree is the largest point mentioned unless given.
  static Permutation parse(std::string_view text, std::optional<int> degree = std::nullopt);
  /// The permutation of lexicographic rank r among all k! one-line words.
  static Permutation unrank(int k, std::uint64_t r);

  int degree() const { return static_cast<int>(images_.size()); }
  /// sigma(i) for 1-based i.
  int operator()(int i) const { return images_[i - 1] + 1; }
  std::vector<int> one_line() const;

  Permutation inverse() const;
  /// (this * rhs)(i) = this(rhs(i)).
  Permutation operator*(const Permutation& rhs) const;
  /// Embeds into S_m (m >= degree) fixing the new points.
  Permutation extended(int m) const;

  int fixed_points() const;
  CycleType cycle_type() const;
  /// kappa(sigma), the number of cycles.
  int cycle_count() const;
  int sign() const;
  /// Lexicographic rank of the one-line word.
  std::uint64_t rank() const;

  /// "2 1 3".
  std::string str() const;
  /// "(1 2)(3)".
  std::string cycle_str() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;  // 0-based
};

std::ostream& operator<<(std::ostream& os, const Permutation& p);

/// All of S_k in lexicographic one-line order (the GroupFunction enumeration order).
std::vector<Permutation> all_permutations(int k);

/// |{i <= n-1 : pi(tau(i)) = i}| with tau in S_{n-1} extended to fix n.
int joint_fixed_points(const Permutation& pi, const Permutation& tau);

}  // namespace weingarten

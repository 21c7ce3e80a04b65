#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace weingarten {

/// A partition lambda of k: weakly decreasing positive parts summing to k.
/// Also used as the cycle type of a permutation.
class Partition {
 public:
  Partition() = default;
  /// Validates that parts are positive and nonincreasing.
  explicit Partition(std::vector<int> parts);
  /// Sorts arbitrary positive parts into a partition.
  static Partition from_multiset(std::vector<int> parts);
  /// Parses the cycle-type string format "3,1,1" (parts in any order).
  static Partition parse(std::string_view text);

  int weight() const { return weight_; }
  /// Number of parts, l(lambda).
  int length() const { return static_cast<int>(parts_.size()); }
  std::span<const int> parts() const { return parts_; }
  /// lambda_i for 1-based i; zero beyond the last part.
  int part(int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }

  /// Conjugate partition lambda'.
  Partition transpose() const;
  /// Diagonal length d(lambda) = #{i : lambda_i >= i}.
  int diagonal_length() const;
  /// Number of parts equal to m.
  int multiplicity(int m) const;

  /// "3,1,1".
  std::string str() const;
  /// "e" for the identity class, otherwise "(3,1,1)".
  std::string label() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  /// Lexicographic on parts; reverse-lexicographic listing is descending order.
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

using CycleType = Partition;

std::ostream& operator<<(std::ostream& os, const Partition& p);

/// All partitions of k in reverse-lexicographic order: (k), (k-1,1), ..., (1^k).
std::vector<Partition> partitions_of(int k);

/// Size of the conjugacy class of cycle type mu in S_k: k!/z_mu.
std::uint64_t conjugacy_class_size(const Partition& mu);

/// f^lambda by the hook-length formula.
std::uint64_t dimension(const Partition& lambda);

/// chi^lambda(mu) by the Murnaghan-Nakayama rule. Throws std::invalid_argument
/// on mismatched weights.
long character(const Partition& lambda, const Partition& mu);

/// (z up lambda) = prod over cells (i, j) of (z + j - i).
template <class T>
T content_product(const Partition& lambda, const T& z) {
  T out(1);
  for (int i = 1; i <= lambda.length(); ++i) {
    for (int j = 1; j <= lambda.part(i); ++j) out *= z + T(j - i);
  }
  return out;
}

}  // namespace weingarten

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "weingarten/partition.hpp"
#include "weingarten/permutation.hpp"

namespace weingarten {

/// Class-level data of S_k. Partitions index both conjugacy classes (as
/// cycle types) and irreducible characters, in reverse-lexicographic order.
struct ClassTable {
  int k = 0;
  std::uint64_t order = 0;
  std::vector<Partition> classes;
  std::vector<std::uint64_t> class_sizes;
  std::vector<std::uint64_t> dimensions;
  /// characters(lambda, mu) = chi^lambda(mu).
  Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic> characters;

  std::size_t size() const { return classes.size(); }
  /// Position of a partition of k; throws std::invalid_argument otherwise.
  std::size_t index_of(const Partition& p) const;
};

/// Cached, thread-safe.
const ClassTable& class_table(int k);

/// Element-level data of S_k in lexicographic one-line order.
struct DenseTable {
  int k = 0;
  std::vector<Permutation> elements;
  std::vector<std::uint32_t> class_of;  // index into class_table(k).classes
  std::vector<std::uint32_t> inverse_of;
};

/// Cached, thread-safe. Memory grows as k!, callers enforce the dense bound.
const DenseTable& dense_table(int k);

}  // namespace weingarten

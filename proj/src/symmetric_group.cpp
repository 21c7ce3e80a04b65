#include "weingarten/symmetric_group.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace weingarten {

std::size_t ClassTable::index_of(const Partition& p) const {
  // classes are in descending order
  auto it = std::lower_bound(classes.begin(), classes.end(), p, [](const Partition& a, const Partition& b) { return a > b; });
  if (it == classes.end() || *it != p) {
    throw std::invalid_argument("'" + p.str() + "' is not a partition of " + std::to_string(k));
  }
  return static_cast<std::size_t>(it - classes.begin());
}

namespace {

template <class Table, class Build>
const Table& cached(int k, Build build) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Table>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[k];
  if (!slot) slot = std::make_unique<Table>(build(k));
  return *slot;
}

ClassTable build_class_table(int k) {
  ClassTable t;
  t.k = k;
  t.classes = partitions_of(k);
  const auto p = static_cast<Eigen::Index>(t.classes.size());
  t.characters.resize(p, p);
  for (Eigen::Index a = 0; a < p; ++a) {
    t.class_sizes.push_back(conjugacy_class_size(t.classes[a]));
    t.dimensions.push_back(dimension(t.classes[a]));
    for (Eigen::Index b = 0; b < p; ++b) t.characters(a, b) = character(t.classes[a], t.classes[b]);
  }
  t.order = 1;
  for (int i = 2; i <= k; ++i) t.order *= static_cast<std::uint64_t>(i);
  return t;
}

DenseTable build_dense_table(int k) {
  DenseTable t;
  t.k = k;
  t.elements = all_permutations(k);
  const ClassTable& classes = class_table(k);
  t.class_of.reserve(t.elements.size());
  t.inverse_of.reserve(t.elements.size());
  for (const auto& p : t.elements) {
    t.class_of.push_back(static_cast<std::uint32_t>(classes.index_of(p.cycle_type())));
    t.inverse_of.push_back(static_cast<std::uint32_t>(p.inverse().rank()));
  }
  return t;
}

}  // namespace

const ClassTable& class_table(int k) {
  if (k < 1) throw std::invalid_argument("S_k requires k >= 1");
  return cached<ClassTable>(k, build_class_table);
}

const DenseTable& dense_table(int k) {
  if (k < 1) throw std::invalid_argument("S_k requires k >= 1");
  return cached<DenseTable>(k, build_dense_table);
}

}  // namespace weingarten

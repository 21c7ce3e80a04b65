#include "weingarten/partition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace weingarten {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be nonincreasing");
    weight_ += parts_[i];
  }
}

Partition Partition::from_multiset(std::vector<int> parts) {
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Partition(std::move(parts));
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  std::string token;
  std::stringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoi(token, &used));
      if (token.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(token);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed cycle type '" + std::string(text) + "'");
    }
  }
  if (parts.empty()) throw std::invalid_argument("empty cycle type");
  return from_multiset(std::move(parts));
}

Partition Partition::transpose() const {
  std::vector<int> out;
  for (int j = 1; j <= part(1); ++j) {
    int count = 0;
    while (count < length() && parts_[count] >= j) ++count;
    out.push_back(count);
  }
  return Partition(std::move(out));
}

int Partition::diagonal_length() const {
  int d = 0;
  while (d < length() && parts_[d] >= d + 1) ++d;
  return d;
}

int Partition::multiplicity(int m) const { return static_cast<int>(std::count(parts_.begin(), parts_.end(), m)); }

std::string Partition::str() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts_[i]);
  }
  return out;
}

std::string Partition::label() const {
  if (std::all_of(parts_.begin(), parts_.end(), [](int p) { return p == 1; })) return "e";
  return "(" + str() + ")";
}

std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.str(); }

namespace {

void generate(int remaining, int max_part, std::vector<int>& current, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    current.push_back(p);
    generate(remaining - p, p, current, out);
    current.pop_back();
  }
}

std::uint64_t factorial_u64(int k) {
  if (k > 20) throw std::invalid_argument("degree too large for 64-bit class sizes");
  std::uint64_t out = 1;
  for (int i = 2; i <= k; ++i) out *= static_cast<std::uint64_t>(i);
  return out;
}

// Murnaghan-Nakayama on beta-sets. Removing a border strip of length r moves a
// bead from position b to b - r; the sign is (-1)^(beads strictly between).
using MemoKey = std::pair<std::vector<int>, std::vector<int>>;

struct CharacterMemo {
  std::shared_mutex mutex;
  std::map<MemoKey, long> table;
};

CharacterMemo& character_memo() {
  static CharacterMemo memo;
  return memo;
}

std::vector<int> strip_zeros(std::vector<int> parts) {
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  return parts;
}

long murnaghan_nakayama(const std::vector<int>& shape, const std::vector<int>& cycles) {
  if (cycles.empty()) return 1;  // shape is empty too
  MemoKey key{shape, cycles};
  auto& memo = character_memo();
  {
    std::shared_lock lock(memo.mutex);
    if (auto it = memo.table.find(key); it != memo.table.end()) return it->second;
  }

  const int r = cycles.front();
  const std::vector<int> rest(cycles.begin() + 1, cycles.end());
  const int len = static_cast<int>(shape.size());
  std::vector<int> beta(len);
  for (int i = 0; i < len; ++i) beta[i] = shape[i] + (len - 1 - i);

  long total = 0;
  for (int i = 0; i < len; ++i) {
    const int target = beta[i] - r;
    if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int between = 0;
    for (int b : beta) {
      if (b > target && b < beta[i]) ++between;
    }
    std::vector<int> moved = beta;
    moved[i] = target;
    std::sort(moved.begin(), moved.end(), std::greater<>());
    std::vector<int> next(len);
    for (int j = 0; j < len; ++j) next[j] = moved[j] - (len - 1 - j);
    const long sub = murnaghan_nakayama(strip_zeros(std::move(next)), rest);
    total += (between % 2 == 0) ? sub : -sub;
  }

  std::unique_lock lock(memo.mutex);
  memo.table.emplace(std::move(key), total);
  return total;
}

}  // namespace

std::vector<Partition> partitions_of(int k) {
  if (k < 1) throw std::invalid_argument("partitions_of requires k >= 1");
  std::vector<Partition> out;
  std::vector<int> current;
  generate(k, k, current, out);
  return out;
}

std::uint64_t conjugacy_class_size(const Partition& mu) {
  std::uint64_t z = 1;
  for (int m = 1; m <= mu.weight(); ++m) {
    const int c = mu.multiplicity(m);
    for (int i = 0; i < c; ++i) z *= static_cast<std::uint64_t>(m);
    z *= factorial_u64(c);
  }
  return factorial_u64(mu.weight()) / z;
}

std::uint64_t dimension(const Partition& lambda) {
  const Partition conj = lambda.transpose();
  // k!/prod(hooks), accumulated as exact division of the running product.
  std::uint64_t hooks = 1;
  for (int i = 1; i <= lambda.length(); ++i) {
    for (int j = 1; j <= lambda.part(i); ++j) hooks *= static_cast<std::uint64_t>(lambda.part(i) - j + conj.part(j) - i + 1);
  }
  return factorial_u64(lambda.weight()) / hooks;
}

long character(const Partition& lambda, const Partition& mu) {
  if (lambda.weight() != mu.weight()) {
    throw std::invalid_argument("character: weights differ (" + lambda.str() + " vs " + mu.str() + ")");
  }
  const auto parts = lambda.parts();
  const auto cycles = mu.parts();
  return murnaghan_nakayama(std::vector<int>(parts.begin(), parts.end()), std::vector<int>(cycles.begin(), cycles.end()));
}

}  // namespace weingarten

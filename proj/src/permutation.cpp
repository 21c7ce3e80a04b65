#include "weingarten/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace weingarten {

Permutation::Permutation(const std::vector<int>& one_line) : images_(one_line.size()) {
  const int k = static_cast<int>(one_line.size());
  std::vector<bool> seen(k, false);
  for (int i = 0; i < k; ++i) {
    const int v = one_line[i];
    if (v < 1 || v > k || seen[v - 1]) throw std::invalid_argument("not a permutation of 1.." + std::to_string(k));
    seen[v - 1] = true;
    images_[i] = v - 1;
  }
}

Permutation Permutation::identity(int k) {
  Permutation p;
  p.images_.resize(k);
  std::iota(p.images_.begin(), p.images_.end(), 0);
  return p;
}

namespace {

std::vector<int> parse_ints(std::string_view text) {
  std::vector<int> out;
  std::string s(text);
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(s);
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(token, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != token.size()) throw std::invalid_argument("malformed permutation token '" + token + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

Permutation Permutation::parse(std::string_view text, std::optional<int> degree) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) {
    return identity(degree.value_or(0));
  }
  if (text[first] != '(') {
    Permutation p(parse_ints(text));
    if (degree && *degree != p.degree()) return p.extended(*degree);
    return p;
  }
  std::vector<std::vector<int>> cycles;
  int max_point = 0;
  std::size_t pos = first;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != '(') throw std::invalid_argument("malformed cycle notation '" + std::string(text) + "'");
    const auto close = text.find(')', pos);
    if (close == std::string_view::npos) throw std::invalid_argument("unbalanced cycle notation");
    cycles.push_back(parse_ints(text.substr(pos + 1, close - pos - 1)));
    for (int v : cycles.back()) max_point = std::max(max_point, v);
    pos = close + 1;
  }
  const int k = degree.value_or(max_point);
  if (max_point > k) throw std::invalid_argument("cycle point exceeds degree");
  std::vector<int> one_line(k);
  std::iota(one_line.begin(), one_line.end(), 1);
  std::vector<bool> used(k + 1, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const int from = cycle[i];
      if (from < 1 || used[from]) throw std::invalid_argument("cycles are not disjoint");
      used[from] = true;
      one_line[from - 1] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Permutation(one_line);
}

Permutation Permutation::unrank(int k, std::uint64_t r) {
  std::vector<int> pool(k);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::uint64_t> fact(k + 1, 1);
  for (int i = 1; i <= k; ++i) fact[i] = fact[i - 1] * i;
  Permutation p;
  p.images_.reserve(k);
  for (int i = k - 1; i >= 0; --i) {
    const std::uint64_t idx = r / fact[i];
    r %= fact[i];
    p.images_.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<long>(idx));
  }
  return p;
}

std::vector<int> Permutation::one_line() const {
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = images_[i] + 1;
  return out;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[images_[i]] = static_cast<int>(i);
  return p;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree()) throw std::invalid_argument("composing permutations of different degrees");
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[i] = images_[rhs.images_[i]];
  return p;
}

Permutation Permutation::extended(int m) const {
  if (m < degree()) throw std::invalid_argument("cannot restrict a permutation");
  Permutation p = *this;
  for (int i = degree(); i < m; ++i) p.images_.push_back(i);
  return p;
}

int Permutation::fixed_points() const {
  int count = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) count += images_[i] == static_cast<int>(i);
  return count;
}

CycleType Permutation::cycle_type() const {
  std::vector<int> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  return Partition::from_multiset(std::move(lengths));
}

int Permutation::cycle_count() const { return cycle_type().length(); }

int Permutation::sign() const { return (degree() - cycle_count()) % 2 == 0 ? 1 : -1; }

std::uint64_t Permutation::rank() const {
  const int k = degree();
  std::uint64_t r = 0;
  for (int i = 0; i < k; ++i) {
    int smaller_after = 0;
    for (int j = i + 1; j < k; ++j) smaller_after += images_[j] < images_[i];
    r = r * static_cast<std::uint64_t>(k - i) + static_cast<std::uint64_t>(smaller_after);
  }
  return r;
}

std::string Permutation::str() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(images_[i] + 1);
  }
  return out;
}

std::string Permutation::cycle_str() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    out += "(";
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
    }
    out += ")";
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << p.str(); }

std::vector<Permutation> all_permutations(int k) {
  std::vector<Permutation> out;
  std::vector<int> word(k);
  std::iota(word.begin(), word.end(), 1);
  do {
    out.emplace_back(word);
  } while (std::next_permutation(word.begin(), word.end()));
  return out;
}

int joint_fixed_points(const Permutation& pi, const Permutation& tau) {
  if (tau.degree() + 1 != pi.degree()) {
    throw std::invalid_argument("joint_fixed_points: expected pi in S_n and tau in S_(n-1)");
  }
  int count = 0;
  for (int i = 1; i <= tau.degree(); ++i) count += pi(tau(i)) == i;
  return count;
}

}  // namespace weingarten

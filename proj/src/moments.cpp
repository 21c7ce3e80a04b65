#include "weingarten/moments.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "weingarten/engine.hpp"

namespace weingarten {

namespace {

// Index resolution against a concrete or formal dimension. In symbolic mode a
// label c keys to c, n-d keys to -d and n keys to 0.
template <class Scalar>
struct Dimension {
  Scalar value;
  bool symbolic = false;
  long concrete = 0;

  long key(const Index& idx) const {
    if (!symbolic) return idx.resolve(concrete);
    return idx.from_end ? -static_cast<long>(idx.value) : idx.value;
  }
  long last_key() const { return symbolic ? 0 : concrete; }
};

template <class Scalar>
Dimension<Scalar> make_dimension(const Scalar& n) {
  Dimension<Scalar> dim{n, false, 0};
  if (auto v = ScalarTraits<Scalar>::integer_value(n)) {
    if (*v < 1) throw DomainError("dimension must be >= 1 (got " + std::to_string(*v) + ")");
    dim.concrete = *v;
    return dim;
  }
  if constexpr (ScalarTraits<Scalar>::symbolic) {
    dim.symbolic = true;
    return dim;
  }
  throw DomainError("dimension must be a positive integer (got " + ScalarTraits<Scalar>::to_string(n) + ")");
}

// (conjugated, row key, column key) -> exponent.
using Monomial = std::map<std::tuple<bool, long, long>, int>;

template <class Scalar>
Scalar p_moment(const Monomial& mono, const Dimension<Scalar>& dim) {
  // counts[key] = {unconjugated rows, unconjugated columns, conjugated rows, conjugated columns}
  std::map<long, std::array<int, 4>> counts;
  int m = 0;
  int l = 0;
  for (const auto& [key, e] : mono) {
    const auto& [conj, row, col] = key;
    auto& r = counts[row];
    auto& c = counts[col];
    if (conj) {
      r[2] += e;
      c[3] += e;
      l += e;
    } else {
      r[0] += e;
      c[1] += e;
      m += e;
    }
  }
  Rational factorials(1);
  int alpha_last = 0;
  for (const auto& [key, c] : counts) {
    if (c[0] + c[3] != c[1] + c[2]) return Scalar(0);
    const int alpha = c[1] + c[2];
    if (key == dim.last_key()) {
      alpha_last = alpha;
    } else {
      factorials *= factorial(alpha);
    }
  }
  return Scalar(factorials) * rising_factorial(dim.value, alpha_last) /
         (rising_factorial(dim.value, m) * rising_factorial(dim.value, l));
}

void require_kinds(const MomentQuery& query, std::initializer_list<EntryKind> allowed, const char* what) {
  for (const auto& f : query.factors()) {
    if (std::find(allowed.begin(), allowed.end(), f.kind) == allowed.end()) {
      throw std::invalid_argument(std::string(what) + " does not accept entries of kind '" + to_char(f.kind) + "'");
    }
  }
}

// Flattened index words of a U-query: (row, column) per unit factor.
using Word = std::vector<std::pair<long, long>>;

template <class Scalar>
std::pair<Word, Word> flatten(const MomentQuery& query, const Dimension<Scalar>& dim) {
  Word a;
  Word b;
  for (const auto& f : query.factors()) {
    const std::pair<long, long> entry{dim.key(f.row), dim.key(f.col)};
    for (int e = 0; e < f.exponent; ++e) (f.conjugated ? b : a).push_back(entry);
  }
  return {a, b};
}

// All sigma in S_k (one-line, 0-based) with lhs[h] == rhs[sigma(h)].
std::vector<std::vector<int>> matchings(const std::vector<long>& lhs, const std::vector<long>& rhs) {
  std::vector<std::vector<int>> out;
  const std::size_t k = lhs.size();
  std::vector<int> current(k);
  std::vector<bool> used(k, false);
  auto go = [&](auto&& self, std::size_t h) -> void {
    if (h == k) {
      out.push_back(current);
      return;
    }
    for (std::size_t s = 0; s < k; ++s) {
      if (used[s] || rhs[s] != lhs[h]) continue;
      used[s] = true;
      current[h] = static_cast<int>(s);
      self(self, h + 1);
      used[s] = false;
    }
  };
  go(go, 0);
  return out;
}

template <class Scalar>
ClassFunction<Scalar> haar_kernel(int k, const Dimension<Scalar>& dim) {
  if (dim.symbolic) return weingarten_by_characters(k, dim.value);
  const ClassFunction<Rational> w =
      k <= dim.concrete ? weingarten_by_characters(k, Rational(dim.concrete)) : pseudo_weingarten(k, dim.concrete);
  return ClassFunction<Scalar>::from_cycle_type(k, [&](const Partition& mu) { return Scalar(w(mu)); });
}

}  // namespace

Rational sphere_moment(std::span<const int> m, std::span<const int> l, long n) {
  if (n < 1) throw DomainError("sphere dimension must be >= 1");
  const std::size_t len = std::max(m.size(), l.size());
  Rational numerator(1);
  int total = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const int mi = i < m.size() ? m[i] : 0;
    const int li = i < l.size() ? l[i] : 0;
    if (mi < 0 || li < 0) throw std::invalid_argument("sphere moment exponents must be nonnegative");
    if (mi != li) return Rational(0);
    if (mi > 0 && static_cast<long>(i) >= n) throw std::invalid_argument("sphere moment index exceeds dimension");
    numerator *= factorial(mi);
    total += mi;
  }
  return numerator / rising_factorial(Rational(n), total);
}

template <ExactScalar Scalar>
Scalar moment_x(const MomentQuery& query, const Scalar& n) {
  require_kinds(query, {EntryKind::X}, "moment_x");
  const auto dim = make_dimension(n);
  std::map<long, std::array<int, 2>> exps;
  for (const auto& f : query.factors()) exps[dim.key(f.row)][f.conjugated ? 1 : 0] += f.exponent;
  Rational numerator(1);
  int total = 0;
  for (const auto& [key, e] : exps) {
    if (e[0] != e[1]) return Scalar(0);
    numerator *= factorial(e[0]);
    total += e[0];
  }
  return Scalar(numerator) / rising_factorial(dim.value, total);
}

template <ExactScalar Scalar>
Scalar moment_p(const MomentQuery& query, const Scalar& n) {
  require_kinds(query, {EntryKind::P}, "moment_p");
  const auto dim = make_dimension(n);
  Monomial mono;
  for (const auto& f : query.factors()) mono[{f.conjugated, dim.key(f.row), dim.key(f.col)}] += f.exponent;
  return p_moment(mono, dim);
}

template <ExactScalar Scalar>
Scalar moment_r(const MomentQuery& query, const Scalar& n, std::size_t term_bound) {
  require_kinds(query, {EntryKind::P, EntryKind::R}, "moment_r");
  const auto dim = make_dimension(n);
  Monomial base;
  std::map<std::pair<bool, long>, int> diagonal;  // (conjugated, s) -> exponent of r_ss
  bool negative = false;
  for (const auto& f : query.factors()) {
    const long row = dim.key(f.row);
    const long col = dim.key(f.col);
    if (f.kind == EntryKind::R && row == col) {
      diagonal[{f.conjugated, row}] += f.exponent;
      continue;
    }
    if (f.kind == EntryKind::R && f.exponent % 2 == 1) negative = !negative;
    base[{f.conjugated, row, col}] += f.exponent;
  }
  std::vector<std::tuple<bool, long, int>> expand;
  std::size_t terms = 1;
  for (const auto& [key, a] : diagonal) {
    expand.emplace_back(key.first, key.second, a);
    terms *= static_cast<std::size_t>(a) + 1;
    if (terms > term_bound) {
      throw DomainError("moment_r expansion exceeds " + std::to_string(term_bound) + " terms");
    }
  }
  // (1 - p_ss)^a = sum_t C(a, t) (-1)^t p_ss^t, expanded jointly over all diagonal factors.
  Scalar total(0);
  std::vector<int> t(expand.size(), 0);
  while (true) {
    Monomial mono = base;
    Rational coefficient(negative ? -1 : 1);
    for (std::size_t i = 0; i < expand.size(); ++i) {
      const auto& [conj, s, a] = expand[i];
      coefficient *= binomial(a, t[i]);
      if (t[i] % 2 == 1) coefficient = -coefficient;
      if (t[i] > 0) mono[{conj, s, s}] += t[i];
    }
    total += Scalar(coefficient) * p_moment(mono, dim);
    std::size_t i = 0;
    for (; i < expand.size(); ++i) {
      if (++t[i] <= std::get<2>(expand[i])) break;
      t[i] = 0;
    }
    if (i == expand.size()) break;
  }
  return total;
}

Rational permutation_r_moment(const Permutation& sigma, long n) {
  const int k = sigma.degree();
  if (k >= n) {
    throw DomainError("permutation_r_moment requires k < n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }
  std::vector<Index> rows;
  std::vector<Index> cols;
  for (int i = 1; i <= k; ++i) {
    rows.push_back(Index::label(i));
    cols.push_back(Index::label(sigma(i)));
  }
  return moment_r(MomentQuery::from_words(EntryKind::R, rows, cols, {}, {}), Rational(n));
}

template <ExactScalar Scalar>
Scalar moment_u_weingarten(const MomentQuery& query, const Scalar& n, int dense_bound) {
  require_kinds(query, {EntryKind::U}, "moment_u_weingarten");
  const auto dim = make_dimension(n);
  const auto [a, b] = flatten(query, dim);
  if (a.size() != b.size()) return Scalar(0);
  const int k = static_cast<int>(a.size());
  if (k == 0) return Scalar(1);
  detail::check_dense_bound(k, dense_bound);
  std::vector<long> i;
  std::vector<long> j;
  std::vector<long> i_conj;
  std::vector<long> j_conj;
  for (int h = 0; h < k; ++h) {
    i.push_back(a[h].first);
    j.push_back(a[h].second);
    i_conj.push_back(b[h].first);
    j_conj.push_back(b[h].second);
  }
  const auto row_matchings = matchings(i, i_conj);
  const auto col_matchings = matchings(j, j_conj);
  if (row_matchings.empty() || col_matchings.empty()) return Scalar(0);

  const DenseTable& dense = dense_table(k);
  const ClassTable& classes = class_table(k);
  std::vector<long> class_counts(classes.size(), 0);
  std::vector<int> composed(static_cast<std::size_t>(k));
  for (const auto& tau : col_matchings) {
    std::vector<int> tau_inv(static_cast<std::size_t>(k));
    for (int h = 0; h < k; ++h) tau_inv[static_cast<std::size_t>(tau[h])] = h;
    for (const auto& sigma : row_matchings) {
      for (int h = 0; h < k; ++h) composed[static_cast<std::size_t>(h)] = sigma[static_cast<std::size_t>(tau_inv[h])] + 1;
      ++class_counts[dense.class_of[Permutation(composed).rank()]];
    }
  }
  const ClassFunction<Scalar> wg = haar_kernel(k, dim);
  Scalar total(0);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (class_counts[c] != 0) total += Scalar(class_counts[c]) * wg.at(c);
  }
  return total;
}

namespace {

class RecursiveHaar {
 public:
  explicit RecursiveHaar(std::size_t term_bound) : term_bound_(term_bound) {}

  Rational eval(Word a, Word b, long n) {
    if (a.size() != b.size()) return Rational(0);
    if (!balanced(a, b)) return Rational(0);
    if (a.empty()) return Rational(1);
    if (n == 1) return Rational(1);
    canonicalize(a, b, n);
    auto key = std::make_tuple(n, a, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Rational value = expand(a, b, n);
    memo_.emplace(std::move(key), value);
    return value;
  }

 private:
  // Row and column multisets must agree on both sides (diagonal phase invariance).
  static bool balanced(const Word& a, const Word& b) {
    auto rows = [](const Word& w) {
      std::vector<long> out;
      for (const auto& e : w) out.push_back(e.first);
      std::sort(out.begin(), out.end());
      return out;
    };
    auto cols = [](const Word& w) {
      std::vector<long> out;
      for (const auto& e : w) out.push_back(e.second);
      std::sort(out.begin(), out.end());
      return out;
    };
    return rows(a) == rows(b) && cols(a) == cols(b);
  }

  // Relabels rows to 1, 2, ... and columns to n, n-1, ... by decreasing frequency.
  static void canonicalize(Word& a, Word& b, long n) {
    auto relabel = [&](bool columns) {
      std::vector<std::pair<long, long>> order;  // (label, frequency), first appearance order
      auto bump = [&](long label) {
        for (auto& [l, c] : order) {
          if (l == label) {
            ++c;
            return;
          }
        }
        order.emplace_back(label, 1);
      };
      for (const auto& e : a) bump(columns ? e.second : e.first);
      for (const auto& e : b) bump(columns ? e.second : e.first);
      std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
      std::map<long, long> map;
      for (std::size_t r = 0; r < order.size(); ++r) {
        map[order[r].first] = columns ? n - static_cast<long>(r) : static_cast<long>(r) + 1;
      }
      for (auto* w : {&a, &b}) {
        for (auto& e : *w) (columns ? e.second : e.first) = map[columns ? e.second : e.first];
      }
    };
    relabel(false);
    relabel(true);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
  }

  Rational expand(const Word& a, const Word& b, long n) {
    Word a_inner;
    Word a_last;
    Word b_inner;
    Word b_last;
    for (const auto& e : a) (e.second == n ? a_last : a_inner).push_back(e);
    for (const auto& e : b) (e.second == n ? b_last : b_inner).push_back(e);
    if (a_inner.size() != b_inner.size()) return Rational(0);
    const std::size_t d = a_inner.size();

    Rational total;
    std::vector<long> p(d, 1);
    while (true) {
      std::vector<long> q = p;
      std::sort(q.begin(), q.end());
      do {
        if (++terms_ > term_bound_) {
          throw DomainError("recursive Haar expansion exceeds " + std::to_string(term_bound_) +
                            " terms; use the Weingarten route");
        }
        const Rational r = r_moment(a_inner, a_last, b_inner, b_last, p, q, n);
        if (r.is_zero()) continue;
        Word va;
        Word vb;
        for (std::size_t h = 0; h < d; ++h) {
          va.emplace_back(p[h], a_inner[h].second);
          vb.emplace_back(q[h], b_inner[h].second);
        }
        const Rational v = eval(std::move(va), std::move(vb), n - 1);
        if (!v.is_zero()) total += r * v;
      } while (std::next_permutation(q.begin(), q.end()));
      std::size_t h = 0;
      for (; h < d; ++h) {
        if (++p[h] <= n - 1) break;
        p[h] = 1;
      }
      if (h == d) break;
    }
    return total;
  }

  Rational r_moment(const Word& a_inner, const Word& a_last, const Word& b_inner, const Word& b_last,
                    const std::vector<long>& p, const std::vector<long>& q, long n) {
    std::vector<Factor> factors;
    auto add = [&](long row, long col, bool conj) {
      factors.push_back({EntryKind::R, Index::label(static_cast<int>(row)), Index::label(static_cast<int>(col)), conj, 1});
    };
    for (std::size_t h = 0; h < a_inner.size(); ++h) add(a_inner[h].first, p[h], false);
    for (const auto& e : a_last) add(e.first, n, false);
    for (std::size_t h = 0; h < b_inner.size(); ++h) add(b_inner[h].first, q[h], true);
    for (const auto& e : b_last) add(e.first, n, true);
    const MomentQuery query = MomentQuery(std::move(factors)).canonical();
    auto key = std::make_pair(n, query.str());
    if (auto it = r_memo_.find(key); it != r_memo_.end()) return it->second;
    const Rational value = moment_r(query, Rational(n));
    r_memo_.emplace(std::move(key), value);
    return value;
  }

  std::size_t term_bound_;
  std::size_t terms_ = 0;
  std::map<std::tuple<long, Word, Word>, Rational> memo_;
  std::map<std::pair<long, std::string>, Rational> r_memo_;
};

}  // namespace

Rational moment_u_recursive(const MomentQuery& query, long n, std::size_t term_bound) {
  require_kinds(query, {EntryKind::U}, "moment_u_recursive");
  const auto dim = make_dimension(Rational(n));
  auto [a, b] = flatten(query, dim);
  return RecursiveHaar(term_bound).eval(std::move(a), std::move(b), n);
}

template <ExactScalar Scalar>
Scalar exact_moment(const MomentQuery& query, const Scalar& n, int dense_bound) {
  switch (query.target()) {
    case EntryKind::X:
      return moment_x(query, n);
    case EntryKind::P:
      return moment_p(query, n);
    case EntryKind::R:
      return moment_r(query, n);
    case EntryKind::U:
      return moment_u_weingarten(query, n, dense_bound);
  }
  throw std::invalid_argument("unknown moment target");
}

template Rational moment_x<Rational>(const MomentQuery&, const Rational&);
template RationalFunction moment_x<RationalFunction>(const MomentQuery&, const RationalFunction&);
template Rational moment_p<Rational>(const MomentQuery&, const Rational&);
template RationalFunction moment_p<RationalFunction>(const MomentQuery&, const RationalFunction&);
template Rational moment_r<Rational>(const MomentQuery&, const Rational&, std::size_t);
template RationalFunction moment_r<RationalFunction>(const MomentQuery&, const RationalFunction&, std::size_t);
template Rational moment_u_weingarten<Rational>(const MomentQuery&, const Rational&, int);
template RationalFunction moment_u_weingarten<RationalFunction>(const MomentQuery&, const RationalFunction&, int);
template Rational exact_moment<Rational>(const MomentQuery&, const Rational&, int);
template RationalFunction exact_moment<RationalFunction>(const MomentQuery&, const RationalFunction&, int);

}  // namespace weingarten

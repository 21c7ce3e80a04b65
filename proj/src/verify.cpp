#include "weingarten/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "weingarten/engine.hpp"
#include "weingarten/moments.hpp"

namespace weingarten {

bool VerifyReport::passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

void VerifyReport::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"recursion", "descension", "pseudo",  "negative-control",
                                              "routes",    "moments",    "bridge",  "haar"};
  return names;
}

namespace {

using RF = RationalFunction;

std::string kn(int k, long n) { return "k=" + std::to_string(k) + " n=" + std::to_string(n); }

template <class Scalar>
std::string dump(const ClassFunction<Scalar>& f) {
  std::string out;
  const ClassTable& table = class_table(f.degree());
  for (std::size_t c = 0; c < table.size(); ++c) {
    if (!out.empty()) out += ", ";
    out += table.classes[c].label() + ": " + ScalarTraits<Scalar>::to_string(f.at(c));
  }
  return out;
}

template <class Scalar>
void expect_equal(VerifyReport& report, const std::string& name, const ClassFunction<Scalar>& got,
                  const ClassFunction<Scalar>& want) {
  const bool ok = got == want;
  report.add(name, ok, ok ? std::string{} : "got {" + dump(got) + "} want {" + dump(want) + "}");
}

VerifyReport recursion_suite(const VerifyBounds& b) {
  VerifyReport report{"recursion", {}};
  const int kmax = b.kmax.value_or(5);
  const long nmax = b.nmax.value_or(8);
  for (int k = 1; k <= kmax; ++k) {
    for (long n = k + 1; n <= nmax; ++n) {
      const Rational z(n);
      const auto wg = weingarten_by_characters(k, z);
      expect_equal(report, "Wg=Raise*Wg(n-1) " + kn(k, n), wg,
                   convolve(ascension(k, z), weingarten_by_characters(k, z - Rational(1))));
      expect_equal(report, "Raise=G(n-1)*Wg " + kn(k, n), ascension(k, z), convolve(gram_function(k, z - Rational(1)), wg));
    }
  }
  const RF n = RF::variable();
  for (int k = 1; k <= std::min(kmax, 4); ++k) {
    const auto wg = weingarten_by_characters(k, n);
    const auto wg_prev = weingarten_by_characters(k, n - RF(1));
    expect_equal(report, "Wg=Raise*Wg(n-1) symbolic k=" + std::to_string(k), wg, convolve(ascension(k, n), wg_prev));
    expect_equal(report, "Raise=G(n-1)*Wg symbolic k=" + std::to_string(k), ascension(k, n),
                 convolve(gram_function(k, n - RF(1)), wg));
    // Character coefficients of Raise are f^lambda ((n-1) up lambda) / ((n up lambda) k!).
    const ClassTable& table = class_table(k);
    Vector<RF> want(static_cast<Eigen::Index>(table.size()));
    for (std::size_t l = 0; l < table.size(); ++l) {
      want(static_cast<Eigen::Index>(l)) = RF(Rational(static_cast<long>(table.dimensions[l]), static_cast<long>(table.order))) *
                                           content_product(table.classes[l], n - RF(1)) / content_product(table.classes[l], n);
    }
    const bool ok = character_coefficients(ascension(k, n)) == want;
    report.add("Raise character coefficients symbolic k=" + std::to_string(k), ok);
  }
  return report;
}

VerifyReport descension_suite(const VerifyBounds& b) {
  VerifyReport report{"descension", {}};
  const int kmax = b.kmax.value_or(5);
  const long nmax = b.nmax.value_or(7);
  for (int k = 1; k <= kmax; ++k) {
    for (long n = k; n <= nmax; ++n) {
      const Rational z(n);
      const auto lower = descension(k, z);
      expect_equal(report, "Raise(n+1)*Lower=delta " + kn(k, n), convolve(ascension(k, z + Rational(1)), lower),
                   ClassFunction<Rational>::delta(k));
      expect_equal(report, "Wg=Lower*Wg(n+1) " + kn(k, n), weingarten_by_characters(k, z),
                   convolve(lower, weingarten_by_characters(k, z + Rational(1))));
    }
  }
  // Lower_{k,n} = sgn . Raise_{k,-n}, formally.
  const RF n = RF::variable();
  for (int k = 1; k <= std::min(kmax, 4); ++k) {
    const auto raise = ascension(k, -n);
    const auto signed_raise = ClassFunction<RF>::from_cycle_type(
        k, [&](const Partition& mu) { return (k - mu.length()) % 2 == 0 ? raise(mu) : -raise(mu); });
    expect_equal(report, "Lower=sgn*Raise(-n) symbolic k=" + std::to_string(k), descension(k, n), signed_raise);
  }
  return report;
}

VerifyReport pseudo_suite(const VerifyBounds& b) {
  VerifyReport report{"pseudo", {}};
  std::vector<std::pair<int, long>> cases{{3, 2}, {4, 2}, {4, 3}, {2, 1}, {5, 3}};
  if (b.k || b.n) {
    if (!b.k || !b.n) throw std::invalid_argument("pseudo suite needs both --k and --n");
    cases = {{*b.k, *b.n}};
  }
  for (const auto& [k, n] : cases) {
    const auto g = gram_function(k, Rational(n));
    const auto w = pseudo_weingarten(k, n);
    expect_equal(report, "G*W*G=G " + kn(k, n), convolve(convolve(g, w), g), g);
    expect_equal(report, "W*G*W=W " + kn(k, n), convolve(convolve(w, g), w), w);
    if (k <= n) expect_equal(report, "W=Wg " + kn(k, n), w, weingarten_by_characters(k, Rational(n)));
  }
  return report;
}

VerifyReport negative_control_suite(const VerifyBounds&) {
  VerifyReport report{"negative-control", {}};
  const auto naive = convolve(ascension(2, Rational(2)), pseudo_weingarten(2, 1));
  const Rational at_e = naive(Partition({1, 1}));
  const Rational wg_e = weingarten_by_characters(2, Rational(2))(Partition({1, 1}));
  report.add("Raise_{2,2}*w_{2,1}(e) = 1/12", at_e == Rational(1, 12), "got " + at_e.str());
  report.add("Wg_{2,2}(e) = 1/3", wg_e == Rational(1, 3), "got " + wg_e.str());
  report.add("ascension step invalid at k=n", at_e != wg_e);
  const auto ladder = weingarten_by_ladder(2, 2);
  report.add("kernel step gives Wg_{2,2}(e) = 1/3", ladder(Partition({1, 1})) == Rational(1, 3));
  return report;
}

VerifyReport routes_suite(const VerifyBounds& b) {
  VerifyReport report{"routes", {}};
  const int kmax = b.kmax.value_or(5);
  const long nmax = b.nmax.value_or(8);
  for (int k = 1; k <= kmax; ++k) {
    for (long n = k; n <= nmax; ++n) {
      const Rational z(n);
      const auto ch = weingarten(k, z, WgRoute::CharacterExpansion);
      expect_equal(report, "gram=char " + kn(k, n), weingarten(k, z, WgRoute::GramInverse), ch);
      expect_equal(report, "recursive=char " + kn(k, n), weingarten(k, z, WgRoute::RecursiveAscension), ch);
      expect_equal(report, "ladder=char " + kn(k, n), weingarten_by_ladder(k, n), ch);
    }
  }
  const RF n = RF::variable();
  for (int k = 1; k <= std::min(kmax, 4); ++k) {
    const auto ch = weingarten(k, n, WgRoute::CharacterExpansion);
    expect_equal(report, "gram=char symbolic k=" + std::to_string(k), weingarten(k, n, WgRoute::GramInverse), ch);
    expect_equal(report, "recursive=char symbolic k=" + std::to_string(k), weingarten(k, n, WgRoute::RecursiveAscension), ch);
  }
  return report;
}

// Index words of a P-monomial with concrete labels.
struct Words {
  std::vector<int> i, j, ic, jc;
};

Words random_words(std::mt19937_64& rng, int n, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> label(1, n);
  Words w;
  const int m = len(rng);
  const int l = len(rng);
  for (int h = 0; h < m; ++h) w.i.push_back(label(rng));
  for (int h = 0; h < l; ++h) w.jc.push_back(label(rng));
  if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    for (int h = 0; h < m; ++h) w.j.push_back(label(rng));
    for (int h = 0; h < l; ++h) w.ic.push_back(label(rng));
  } else {
    std::vector<int> pool = w.i;
    pool.insert(pool.end(), w.jc.begin(), w.jc.end());
    std::shuffle(pool.begin(), pool.end(), rng);
    w.j.assign(pool.begin(), pool.begin() + m);
    w.ic.assign(pool.begin() + m, pool.end());
  }
  return w;
}

std::vector<Factor> p_factors(const Words& w) {
  std::vector<Factor> out;
  for (std::size_t h = 0; h < w.i.size(); ++h) out.push_back({EntryKind::P, Index::label(w.i[h]), Index::label(w.j[h]), false, 1});
  for (std::size_t h = 0; h < w.ic.size(); ++h) out.push_back({EntryKind::P, Index::label(w.ic[h]), Index::label(w.jc[h]), true, 1});
  return out;
}

// alpha_k = multiplicity of k in i + j' (= in j + i'); empty when unbalanced.
std::optional<std::vector<int>> alphas(const Words& w, int n) {
  std::vector<int> lhs(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> rhs(static_cast<std::size_t>(n) + 1, 0);
  for (int v : w.i) ++lhs[v];
  for (int v : w.jc) ++lhs[v];
  for (int v : w.j) ++rhs[v];
  for (int v : w.ic) ++rhs[v];
  if (lhs != rhs) return std::nullopt;
  return lhs;
}

Rational alpha_prefactor(const std::vector<int>& alpha, long n) {
  Rational out(1);
  for (long k = 1; k < n; ++k) out *= factorial(alpha[k]);
  return out * rising_factorial(Rational(n), alpha[n]);
}

Rational closed_form_rss_power(const Words& w, int s, int q, long n) {
  const auto alpha = alphas(w, static_cast<int>(n));
  if (!alpha) return Rational(0);
  const int m = static_cast<int>(w.i.size());
  const int l = static_cast<int>(w.ic.size());
  const Rational base =
      alpha_prefactor(*alpha, n) / (rising_factorial(Rational(n), m + q) * rising_factorial(Rational(n), l));
  const Rational last = s < n ? rising_factorial(Rational(n + m - (*alpha)[s] - 1), q)
                              : rising_factorial(Rational(m - (*alpha)[n]), q);
  return base * last;
}

Rational closed_form_rss_abs2(const Words& w, int s, long n) {
  const auto alpha = alphas(w, static_cast<int>(n));
  if (!alpha) return Rational(0);
  const long m = static_cast<long>(w.i.size());
  const long l = static_cast<long>(w.ic.size());
  const Rational base = alpha_prefactor(*alpha, n) / (rising_factorial(Rational(n), static_cast<int>(m + 1)) *
                                                      rising_factorial(Rational(n), static_cast<int>(l + 1)));
  Rational last;
  if (s < n) {
    const long a = (*alpha)[s] + 1;
    last = Rational((n + m) * (n + l) - a * (2 * n + m + l) + a * (a + 1));
  } else {
    const long a = (*alpha)[n];
    last = Rational(n + (m - a) * (l - a) + a);
  }
  return base * last;
}

VerifyReport moments_suite(const VerifyBounds& b) {
  VerifyReport report{"moments", {}};
  const RF n = RF::variable();
  auto symbolic = [&](const std::string& name, const std::string& query, const std::string& want) {
    const RF got = exact_moment(MomentQuery::parse(query), n);
    report.add(name, got == RF::parse(want), "got " + got.str());
  };
  symbolic("|p11|^4 |pnn|^2", "p[1,1]^2 p[n,n] p~[1,1]^2 p~[n,n]", "24/(n*(n+1)*(n+2)^2)");
  symbolic("p12^2 pn1^2 pnn^3 conj(pn2)^2", "p[1,2]^2 p[n,1]^2 p[n,n]^3 p~[n,2]^2", "4/(n*(n+1)*(n+5)*(n+6))");
  symbolic("p12 p21 pnn^4 conj(p33^2 pnn^3)", "p[1,2] p[2,1] p[n,n]^4 p~[3,3]^2 p~[n,n]^3",
           "2*(n+6)/(n*(n+1)*(n+2)*(n+3)*(n+4))");
  for (int k = 1; k <= 4; ++k) {
    std::string q;
    for (int i = 1; i <= k; ++i) q += " p[" + std::to_string(i) + "," + std::to_string(i) + "] p~[" + std::to_string(i) + "," + std::to_string(i) + "]";
    const RF want = RF(Rational(1L << k)) / (rising_factorial(n, k) * rising_factorial(n, k));
    const RF got = moment_p(MomentQuery::parse(q), n);
    report.add("|p11...pkk|^2 k=" + std::to_string(k), got == want, "got " + got.str());
  }
  symbolic("r22^3 r12^2 rn1^2 conj(rn2)^2", "r[1,2]^2 r[n,1]^2 r~[n,2]^2 r[2,2]^3", "4/(n*(n+4)*(n+5)*(n+6))");
  symbolic("r12^2 rn1^2 conj(rn2)^2 rnn^3", "r[1,2]^2 r[n,1]^2 r~[n,2]^2 r[n,n]^3",
           "96/(n*(n+1)*(n+2)*(n+3)*(n+4)*(n+5)*(n+6))");
  symbolic("|r11 rnn|^2", "r[1,1] r[n,n] r~[1,1] r~[n,n]", "(n^2-n+2)/(n^2*(n+1))");
  for (int q = 1; q <= 5; ++q) {
    symbolic("r11^" + std::to_string(q), "r[1,1]^" + std::to_string(q), "(n-1)/(n+" + std::to_string(q - 1) + ")");
    symbolic("rnn^" + std::to_string(q), "r[n,n]^" + std::to_string(q), "0");
  }

  std::mt19937_64 rng(b.seed);
  const int count = b.count.value_or(200);
  for (int trial = 0; trial < count; ++trial) {
    const long dim = std::uniform_int_distribution<long>(2, 7)(rng);
    const Words w = random_words(rng, static_cast<int>(dim), 4);
    const int s = std::uniform_int_distribution<int>(1, static_cast<int>(dim))(rng);
    const std::string tag = "n=" + std::to_string(dim) + " s=" + std::to_string(s);
    {
      const int q = std::uniform_int_distribution<int>(1, 4)(rng);
      auto factors = p_factors(w);
      factors.push_back({EntryKind::R, Index::label(s), Index::label(s), false, q});
      const MomentQuery query(factors);
      const Rational got = moment_r(query, Rational(dim));
      const Rational want = closed_form_rss_power(w, s, q, dim);
      report.add("r_ss^q closed form " + tag + " " + query.str(), got == want, "got " + got.str() + " want " + want.str());
    }
    {
      auto factors = p_factors(w);
      factors.push_back({EntryKind::R, Index::label(s), Index::label(s), false, 1});
      factors.push_back({EntryKind::R, Index::label(s), Index::label(s), true, 1});
      const MomentQuery query(factors);
      const Rational got = moment_r(query, Rational(dim));
      const Rational want = closed_form_rss_abs2(w, s, dim);
      report.add("|r_ss|^2 closed form " + tag + " " + query.str(), got == want, "got " + got.str() + " want " + want.str());
    }
    {
      // Distinct rows avoiding n; columns a permutation of the rows half the time.
      const int m = std::uniform_int_distribution<int>(1, static_cast<int>(std::min<long>(4, dim - 1)))(rng);
      std::vector<int> rows(static_cast<std::size_t>(dim - 1));
      std::iota(rows.begin(), rows.end(), 1);
      std::shuffle(rows.begin(), rows.end(), rng);
      rows.resize(static_cast<std::size_t>(m));
      std::vector<int> cols = rows;
      std::shuffle(cols.begin(), cols.end(), rng);
      if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
        cols[0] = std::uniform_int_distribution<int>(1, static_cast<int>(dim))(rng);
      }
      std::vector<Index> ri;
      std::vector<Index> ci;
      int f = 0;
      for (int h = 0; h < m; ++h) {
        ri.push_back(Index::label(rows[h]));
        ci.push_back(Index::label(cols[h]));
        f += rows[h] == cols[h];
      }
      const MomentQuery query = MomentQuery::from_words(EntryKind::R, ri, ci, {}, {});
      Rational want;
      if (std::is_permutation(rows.begin(), rows.end(), cols.begin())) {
        for (int t = 0; t <= f; ++t) {
          const Rational term = binomial(f, t) / rising_factorial(Rational(dim), m - t);
          want += (m - t) % 2 == 0 ? term : -term;
        }
      }
      const Rational got = moment_r(query, Rational(dim));
      report.add("distinct-row r product " + tag + " " + query.str(), got == want, "got " + got.str() + " want " + want.str());
    }
  }
  return report;
}

VerifyReport bridge_suite(const VerifyBounds& b) {
  VerifyReport report{"bridge", {}};
  const int kmax = b.kmax.value_or(5);
  const long nmax = b.nmax.value_or(8);
  for (int k = 1; k <= kmax; ++k) {
    for (long n = k + 1; n <= nmax; ++n) {
      const auto raise = ascension(k, Rational(n));
      std::size_t bad = 0;
      std::string first;
      for (const auto& sigma : all_permutations(k)) {
        const Rational want = raise(sigma);
        const Rational via_r = permutation_r_moment(sigma, n);
        const Rational via_x = ascension_via_sphere(n, sigma);
        if (via_r != want || via_x != want) {
          if (bad++ == 0) first = sigma.str() + ": r-moment " + via_r.str() + ", sphere " + via_x.str() + ", Raise " + want.str();
        }
      }
      report.add("E[r_{1 s(1)}...r_{k s(k)}] = Raise " + kn(k, n), bad == 0, first);
    }
  }
  return report;
}

VerifyReport haar_suite(const VerifyBounds& b) {
  VerifyReport report{"haar", {}};
  std::vector<long> dims{3, 4};
  if (b.n) dims = {*b.n};
  for (long n : dims) {
    const std::vector<Index> idx{Index::last(1), Index::last(0)};
    // All degree-2 monomials u_{a b} u_{c d} conj(u_{e f} u_{g h}) over rows and columns {n-1, n}.
    std::size_t total = 0;
    std::size_t bad = 0;
    std::string first;
    for (int code = 0; code < 256; ++code) {
      std::vector<Index> w(8);
      for (int bit = 0; bit < 8; ++bit) w[bit] = idx[(code >> bit) & 1];
      const MomentQuery query = MomentQuery::from_words(EntryKind::U, {w[0], w[2]}, {w[1], w[3]}, {w[4], w[6]}, {w[5], w[7]});
      const Rational a = moment_u_weingarten(query, Rational(n));
      const Rational r = moment_u_recursive(query, n);
      ++total;
      if (a != r && bad++ == 0) first = query.str() + ": weingarten " + a.str() + ", recursive " + r.str();
    }
    report.add("recursive=weingarten, 256 degree-2 queries, n=" + std::to_string(n), bad == 0,
               bad ? std::to_string(bad) + "/" + std::to_string(total) + " differ; " + first : "");
    const MomentQuery swap = MomentQuery::parse("u[n-1,n-1] u[n,n] u~[n-1,n] u~[n,n-1]");
    const MomentQuery same = MomentQuery::parse("u[n-1,n-1] u[n,n] u~[n-1,n-1] u~[n,n]");
    const Rational z(n);
    const Rational want_swap = Rational(-1) / ((z - Rational(1)) * z * (z + Rational(1)));
    const Rational want_same = Rational(1) / ((z - Rational(1)) * (z + Rational(1)));
    report.add("Wg_{2,n}((1 2)) moment n=" + std::to_string(n), moment_u_recursive(swap, n) == want_swap);
    report.add("Wg_{2,n}(e) moment n=" + std::to_string(n), moment_u_recursive(same, n) == want_same);
  }
  return report;
}

}  // namespace

VerifyReport run_suite(const std::string& name, const VerifyBounds& bounds) {
  if (name == "recursion") return recursion_suite(bounds);
  if (name == "descension") return descension_suite(bounds);
  if (name == "pseudo") return pseudo_suite(bounds);
  if (name == "negative-control") return negative_control_suite(bounds);
  if (name == "routes") return routes_suite(bounds);
  if (name == "moments") return moments_suite(bounds);
  if (name == "bridge") return bridge_suite(bounds);
  if (name == "haar") return haar_suite(bounds);
  throw std::invalid_argument("unknown verify suite '" + name + "'");
}

}  // namespace weingarten

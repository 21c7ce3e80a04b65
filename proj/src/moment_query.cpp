#include "weingarten/moment_query.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <tuple>

namespace weingarten {

char to_char(EntryKind kind) {
  switch (kind) {
    case EntryKind::X:
      return 'x';
    case EntryKind::P:
      return 'p';
    case EntryKind::R:
      return 'r';
    case EntryKind::U:
      return 'u';
  }
  return '?';
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

int parse_positive(const std::string& text, const std::string& what) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw std::invalid_argument("malformed " + what + " '" + text + "'");
  }
  return std::stoi(text);
}

}  // namespace

Index Index::parse(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty index");
  if (s[0] == 'n') {
    std::string rest = trim(std::string_view(s).substr(1));
    if (rest.empty()) return last(0);
    if (rest[0] != '-') throw std::invalid_argument("malformed index '" + s + "'");
    return last(parse_positive(trim(std::string_view(rest).substr(1)), "index offset"));
  }
  const int c = parse_positive(s, "index");
  if (c < 1) throw std::invalid_argument("indices are 1-based");
  return label(c);
}

long Index::resolve(long n) const {
  const long v = from_end ? n - value : value;
  if (v < 1 || v > n) throw std::invalid_argument("index " + str() + " outside 1.." + std::to_string(n));
  return v;
}

std::string Index::str() const {
  if (!from_end) return std::to_string(value);
  return value == 0 ? "n" : "n-" + std::to_string(value);
}

MomentQuery::MomentQuery(std::vector<Factor> factors) : factors_(std::move(factors)) {
  bool has_u = false;
  bool has_x = false;
  bool has_pr = false;
  for (const auto& f : factors_) {
    if (f.exponent < 0) throw std::invalid_argument("negative exponent");
    has_u |= f.kind == EntryKind::U;
    has_x |= f.kind == EntryKind::X;
    has_pr |= f.kind == EntryKind::P || f.kind == EntryKind::R;
  }
  if (static_cast<int>(has_u) + static_cast<int>(has_x) + static_cast<int>(has_pr) > 1) {
    throw std::invalid_argument("a moment query mixes entries of different random matrices");
  }
}

MomentQuery MomentQuery::parse(std::string_view text) {
  std::vector<Factor> factors;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*')) ++pos;
  };
  skip();
  while (pos < text.size()) {
    Factor f;
    switch (std::tolower(static_cast<unsigned char>(text[pos]))) {
      case 'x':
        f.kind = EntryKind::X;
        break;
      case 'p':
        f.kind = EntryKind::P;
        break;
      case 'r':
        f.kind = EntryKind::R;
        break;
      case 'u':
        f.kind = EntryKind::U;
        break;
      default:
        throw std::invalid_argument("unknown entry '" + std::string(1, text[pos]) + "' in query");
    }
    ++pos;
    if (pos < text.size() && text[pos] == '~') {
      f.conjugated = true;
      ++pos;
    }
    if (pos >= text.size() || text[pos] != '[') throw std::invalid_argument("expected '[' in query");
    const auto close = text.find(']', pos);
    if (close == std::string_view::npos) throw std::invalid_argument("expected ']' in query");
    const std::string inside(text.substr(pos + 1, close - pos - 1));
    const auto comma = inside.find(',');
    if (f.kind == EntryKind::X) {
      if (comma != std::string::npos) throw std::invalid_argument("x entries take a single index");
      f.row = Index::parse(inside);
      f.col = f.row;
    } else {
      if (comma == std::string::npos) throw std::invalid_argument("matrix entries take two indices");
      f.row = Index::parse(std::string_view(inside).substr(0, comma));
      f.col = Index::parse(std::string_view(inside).substr(comma + 1));
    }
    pos = close + 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      const std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      f.exponent = parse_positive(std::string(text.substr(start, pos - start)), "exponent");
    }
    factors.push_back(f);
    skip();
  }
  return MomentQuery(std::move(factors));
}

MomentQuery MomentQuery::from_words(EntryKind kind, const std::vector<Index>& i, const std::vector<Index>& j,
                                    const std::vector<Index>& i_conj, const std::vector<Index>& j_conj) {
  if (i.size() != j.size() || i_conj.size() != j_conj.size()) {
    throw std::invalid_argument("index words must have matching lengths");
  }
  std::vector<Factor> factors;
  for (std::size_t h = 0; h < i.size(); ++h) factors.push_back({kind, i[h], j[h], false, 1});
  for (std::size_t h = 0; h < i_conj.size(); ++h) factors.push_back({kind, i_conj[h], j_conj[h], true, 1});
  return MomentQuery(std::move(factors));
}

MomentQuery MomentQuery::from_exponents(EntryKind kind, const Eigen::MatrixXi& a, const Eigen::MatrixXi& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw std::invalid_argument("exponent matrices must be square and of equal size");
  }
  std::vector<Factor> factors;
  for (int conj = 0; conj < 2; ++conj) {
    const Eigen::MatrixXi& m = conj ? b : a;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (m(r, c) < 0) throw std::invalid_argument("exponents must be nonnegative");
        if (m(r, c) == 0) continue;
        factors.push_back({kind, Index::label(static_cast<int>(r) + 1), Index::label(static_cast<int>(c) + 1), conj == 1, m(r, c)});
      }
    }
  }
  return MomentQuery(std::move(factors));
}

EntryKind MomentQuery::target() const {
  EntryKind out = EntryKind::P;
  for (const auto& f : factors_) {
    if (f.kind == EntryKind::U || f.kind == EntryKind::X) return f.kind;
    if (f.kind == EntryKind::R) out = EntryKind::R;
  }
  return out;
}

int MomentQuery::degree(bool conjugated) const {
  int d = 0;
  for (const auto& f : factors_) {
    if (f.conjugated == conjugated) d += f.exponent;
  }
  return d;
}

MomentQuery MomentQuery::canonical() const {
  std::map<std::tuple<EntryKind, bool, Index, Index>, int> merged;
  for (const auto& f : factors_) {
    if (f.exponent > 0) merged[{f.kind, f.conjugated, f.row, f.col}] += f.exponent;
  }
  std::vector<Factor> out;
  for (const auto& [key, e] : merged) out.push_back({std::get<0>(key), std::get<2>(key), std::get<3>(key), std::get<1>(key), e});
  return MomentQuery(std::move(out));
}

std::string MomentQuery::str() const {
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += " ";
    out += to_char(f.kind);
    if (f.conjugated) out += "~";
    out += "[" + f.row.str();
    if (f.kind != EntryKind::X) out += "," + f.col.str();
    out += "]";
    if (f.exponent != 1) out += "^" + std::to_string(f.exponent);
  }
  return out.empty() ? "1" : out;
}

}  // namespace weingarten

#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace weingarten {

/// Which random matrix an entry belongs to. P = I - R and R share one
/// reflection; X is its last column (the uniform sphere vector).
enum class EntryKind { X, P, R, U };

char to_char(EntryKind kind);

/// A matrix index: either a concrete label c or n - offset relative to the
/// dimension. In symbolic mode, distinct tokens are distinct indices and only
/// n itself is the last index.
struct Index {
  int value = 1;
  bool from_end = false;

  static Index label(int c) { return Index{c, false}; }
  static Index last(int offset = 0) { return Index{offset, true}; }
  static Index parse(std::string_view text);

  /// Concrete position in 1..n; throws std::invalid_argument if out of range.
  long resolve(long n) const;
  bool is_last() const { return from_end && value == 0; }
  /// "3", "n", "n-1".
  std::string str() const;

  friend bool operator==(const Index&, const Index&) = default;
  friend auto operator<=>(const Index&, const Index&) = default;
};

/// One factor m^exponent (or conj(m)^exponent) of a moment monomial. For X
/// entries only `row` is meaningful.
struct Factor {
  EntryKind kind = EntryKind::P;
  Index row;
  Index col;
  bool conjugated = false;
  int exponent = 1;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// A monomial in matrix entries and their conjugates whose expectation is
/// requested. The dimension is supplied separately by each evaluator.
class MomentQuery {
 public:
  MomentQuery() = default;
  explicit MomentQuery(std::vector<Factor> factors);

  /// Parses product tokens such as "p[1,2]^2 p~[n,2]^2 r[2,2]^3 x[1]";
  /// '~' marks the conjugate.
  static MomentQuery parse(std::string_view text);
  /// prod_h m_{i_h j_h} * conj(prod_h m_{i'_h j'_h}); throws std::invalid_argument
  /// when |i| != |j| or |i'| != |j'|.
  static MomentQuery from_words(EntryKind kind, const std::vector<Index>& i, const std::vector<Index>& j,
                                const std::vector<Index>& i_conj, const std::vector<Index>& j_conj);
  /// prod_{ij} m_{ij}^{A_ij} conj(m_{ij})^{B_ij}, with 1-based concrete labels.
  static MomentQuery from_exponents(EntryKind kind, const Eigen::MatrixXi& a, const Eigen::MatrixXi& b);

  const std::vector<Factor>& factors() const { return factors_; }
  /// P for pure p-queries, R for any mix of r and p, U, or X.
  EntryKind target() const;
  /// Total exponent of unconjugated and conjugated factors.
  int degree(bool conjugated) const;
  /// Same monomial with identical factors merged and sorted.
  MomentQuery canonical() const;
  std::string str() const;

 private:
  std::vector<Factor> factors_;
};

}  // namespace weingarten

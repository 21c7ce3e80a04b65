#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include "weingarten/errors.hpp"
#include "weingarten/permutation.hpp"
#include "weingarten/scalar.hpp"
#include "weingarten/symmetric_group.hpp"

namespace weingarten {

/// Largest k for which dense (k!-sized) group functions are built by default.
inline constexpr int kDefaultDenseBound = 7;

/// A function on S_k constant on conjugacy classes, stored per cycle type in
/// class_table(k) order.
template <ExactScalar Scalar>
class ClassFunction {
 public:
  ClassFunction() = default;
  /// The zero function on S_k.
  explicit ClassFunction(int k) : k_(k), values_(Vector<Scalar>::Zero(static_cast<Eigen::Index>(class_table(k).size()))) {}
  ClassFunction(int k, Vector<Scalar> values) : k_(k), values_(std::move(values)) {
    if (values_.size() != static_cast<Eigen::Index>(class_table(k).size())) {
      throw std::invalid_argument("class function on S_" + std::to_string(k) + " needs one value per cycle type");
    }
  }

  /// Dirac function at the identity e_k.
  static ClassFunction delta(int k) {
    ClassFunction f(k);
    f.values_(static_cast<Eigen::Index>(class_table(k).size()) - 1) = Scalar(1);
    return f;
  }

  static ClassFunction from_cycle_type(int k, const std::function<Scalar(const Partition&)>& fn) {
    ClassFunction f(k);
    const auto& table = class_table(k);
    for (std::size_t c = 0; c < table.size(); ++c) f.values_(static_cast<Eigen::Index>(c)) = fn(table.classes[c]);
    return f;
  }

  int degree() const { return k_; }
  const Vector<Scalar>& values() const { return values_; }
  const Scalar& at(std::size_t class_index) const { return values_(static_cast<Eigen::Index>(class_index)); }
  const Scalar& operator()(const Partition& cycle_type) const {
    return at(class_table(k_).index_of(cycle_type));
  }
  const Scalar& operator()(const Permutation& sigma) const { return (*this)(sigma.cycle_type()); }
  void set(const Partition& cycle_type, Scalar value) {
    values_(static_cast<Eigen::Index>(class_table(k_).index_of(cycle_type))) = std::move(value);
  }

  friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
    return a.k_ == b.k_ && a.values_.size() == b.values_.size() && (a.values_.array() == b.values_.array()).all();
  }

 private:
  int k_ = 0;
  Vector<Scalar> values_;
};

/// A function on all of S_k, stored densely in lexicographic one-line order.
template <ExactScalar Scalar>
class GroupFunction {
 public:
  GroupFunction() = default;
  GroupFunction(int k, Vector<Scalar> values) : k_(k), values_(std::move(values)) {
    if (values_.size() != static_cast<Eigen::Index>(dense_table(k).elements.size())) {
      throw std::invalid_argument("group function on S_" + std::to_string(k) + " needs k! values");
    }
  }

  static GroupFunction from_permutation(int k, const std::function<Scalar(const Permutation&)>& fn) {
    const auto& table = dense_table(k);
    Vector<Scalar> values(static_cast<Eigen::Index>(table.elements.size()));
    for (std::size_t i = 0; i < table.elements.size(); ++i) values(static_cast<Eigen::Index>(i)) = fn(table.elements[i]);
    return GroupFunction(k, std::move(values));
  }

  int degree() const { return k_; }
  const Vector<Scalar>& values() const { return values_; }
  const Scalar& operator()(const Permutation& sigma) const { return values_(static_cast<Eigen::Index>(sigma.rank())); }

  friend bool operator==(const GroupFunction& a, const GroupFunction& b) {
    return a.k_ == b.k_ && a.values_.size() == b.values_.size() && (a.values_.array() == b.values_.array()).all();
  }

 private:
  int k_ = 0;
  Vector<Scalar> values_;
};

namespace detail {

inline void check_same_degree(int a, int b) {
  if (a != b) {
    throw std::invalid_argument("convolution of functions on S_" + std::to_string(a) + " and S_" + std::to_string(b));
  }
}

inline void check_dense_bound(int k, int bound) {
  if (k > bound) {
    throw DomainError("dense group functions limited to k <= " + std::to_string(bound) + " (got k=" + std::to_string(k) +
                      "); use the class-function (character basis) route");
  }
}

template <class Scalar>
Matrix<Scalar> character_matrix(const ClassTable& table) {
  return table.characters.unaryExpr([](long v) { return Scalar(v); });
}

}  // namespace detail

/// Coefficients c_lambda with f = sum_lambda c_lambda chi^lambda:
/// c_lambda = (1/k!) sum_mu |C_mu| f(mu) chi^lambda(mu).
template <ExactScalar Scalar>
Vector<Scalar> character_coefficients(const ClassFunction<Scalar>& f) {
  const ClassTable& table = class_table(f.degree());
  Vector<Scalar> weighted = f.values();
  for (Eigen::Index c = 0; c < weighted.size(); ++c) {
    weighted(c) *= Scalar(Rational(static_cast<long>(table.class_sizes[c]), static_cast<long>(table.order)));
  }
  return detail::character_matrix<Scalar>(table) * weighted;
}

template <ExactScalar Scalar>
ClassFunction<Scalar> from_character_coefficients(int k, const Vector<Scalar>& coefficients) {
  const ClassTable& table = class_table(k);
  return ClassFunction<Scalar>(k, detail::character_matrix<Scalar>(table).transpose() * coefficients);
}

/// Convolution in the character basis, where chi^l * chi^m = delta_lm (k!/f^l) chi^l.
template <ExactScalar Scalar>
ClassFunction<Scalar> convolve(const ClassFunction<Scalar>& f, const ClassFunction<Scalar>& g) {
  detail::check_same_degree(f.degree(), g.degree());
  const ClassTable& table = class_table(f.degree());
  Vector<Scalar> a = character_coefficients(f);
  const Vector<Scalar> b = character_coefficients(g);
  for (Eigen::Index l = 0; l < a.size(); ++l) {
    a(l) *= b(l) * Scalar(Rational(static_cast<long>(table.order), static_cast<long>(table.dimensions[l])));
  }
  return from_character_coefficients(f.degree(), a);
}

/// Direct sum over S_k, one class representative per output value.
template <ExactScalar Scalar>
ClassFunction<Scalar> convolve_direct(const ClassFunction<Scalar>& f, const ClassFunction<Scalar>& g,
                                      int dense_bound = kDefaultDenseBound) {
  detail::check_same_degree(f.degree(), g.degree());
  const int k = f.degree();
  detail::check_dense_bound(k, dense_bound);
  const ClassTable& classes = class_table(k);
  const DenseTable& dense = dense_table(k);
  ClassFunction<Scalar> out(k);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    // representative of cycle type (m1, m2, ...): consecutive cycles
    std::vector<int> one_line(k);
    int start = 0;
    for (int len : classes.classes[c].parts()) {
      for (int i = 0; i < len; ++i) one_line[start + i] = start + (i + 1) % len + 1;
      start += len;
    }
    const Permutation pi(one_line);
    Scalar acc(0);
    for (std::size_t s = 0; s < dense.elements.size(); ++s) {
      const Scalar& fs = f.at(dense.class_of[s]);
      if (fs == Scalar(0)) continue;
      const Permutation rest = dense.elements[dense.inverse_of[s]] * pi;
      acc += fs * g(rest.cycle_type());
    }
    out.set(classes.classes[c], std::move(acc));
  }
  return out;
}

/// Convolution inverse; throws DomainError("not invertible ...") naming the
/// first irreducible with a vanishing coefficient.
template <ExactScalar Scalar>
ClassFunction<Scalar> invert(const ClassFunction<Scalar>& f) {
  const int k = f.degree();
  const ClassTable& table = class_table(k);
  const Vector<Scalar> c = character_coefficients(f);
  Vector<Scalar> inv(c.size());
  for (Eigen::Index l = 0; l < c.size(); ++l) {
    if (c(l) == Scalar(0)) {
      throw DomainError("not invertible: zero Fourier coefficient at lambda=(" + table.classes[l].str() + ")");
    }
    const Scalar delta_coeff(Rational(static_cast<long>(table.dimensions[l]), static_cast<long>(table.order)));
    inv(l) = delta_coeff * delta_coeff / c(l);
  }
  return from_character_coefficients(k, inv);
}

template <ExactScalar Scalar>
GroupFunction<Scalar> lift_to_dense(const ClassFunction<Scalar>& f, int dense_bound = kDefaultDenseBound) {
  detail::check_dense_bound(f.degree(), dense_bound);
  const DenseTable& dense = dense_table(f.degree());
  Vector<Scalar> values(static_cast<Eigen::Index>(dense.elements.size()));
  for (std::size_t i = 0; i < dense.elements.size(); ++i) values(static_cast<Eigen::Index>(i)) = f.at(dense.class_of[i]);
  return GroupFunction<Scalar>(f.degree(), std::move(values));
}

/// Throws std::invalid_argument with a witness pair if f is not constant on classes.
template <ExactScalar Scalar>
ClassFunction<Scalar> project_to_class(const GroupFunction<Scalar>& f) {
  const int k = f.degree();
  const DenseTable& dense = dense_table(k);
  const ClassTable& classes = class_table(k);
  std::vector<long> witness(classes.size(), -1);
  ClassFunction<Scalar> out(k);
  for (std::size_t i = 0; i < dense.elements.size(); ++i) {
    const auto c = dense.class_of[i];
    const Scalar& v = f.values()(static_cast<Eigen::Index>(i));
    if (witness[c] < 0) {
      witness[c] = static_cast<long>(i);
      out.set(classes.classes[c], v);
    } else if (!(out.at(c) == v)) {
      throw std::invalid_argument("not a class function: conjugate permutations [" +
                                  dense.elements[static_cast<std::size_t>(witness[c])].str() + "] and [" +
                                  dense.elements[i].str() + "] take different values");
    }
  }
  return out;
}

/// (f*g)(pi) = sum_sigma f(sigma) g(sigma^-1 pi) over all of S_k.
template <ExactScalar Scalar>
GroupFunction<Scalar> convolve_dense(const GroupFunction<Scalar>& f, const GroupFunction<Scalar>& g,
                                     int dense_bound = kDefaultDenseBound) {
  detail::check_same_degree(f.degree(), g.degree());
  detail::check_dense_bound(f.degree(), dense_bound);
  const DenseTable& dense = dense_table(f.degree());
  const auto size = static_cast<Eigen::Index>(dense.elements.size());
  Vector<Scalar> out = Vector<Scalar>::Zero(size);
  for (Eigen::Index s = 0; s < size; ++s) {
    const Scalar& fs = f.values()(s);
    if (fs == Scalar(0)) continue;
    const Permutation& sigma_inv = dense.elements[dense.inverse_of[static_cast<std::size_t>(s)]];
    for (Eigen::Index p = 0; p < size; ++p) {
      const auto r = static_cast<Eigen::Index>((sigma_inv * dense.elements[static_cast<std::size_t>(p)]).rank());
      out(p) += fs * g.values()(r);
    }
  }
  return GroupFunction<Scalar>(f.degree(), std::move(out));
}

}  // namespace weingarten

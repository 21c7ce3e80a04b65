#pragma once

#include "weingarten/errors.hpp"
#include "weingarten/scalar.hpp"

namespace weingarten {

/// Solves A x = b exactly by Gauss-Jordan elimination with first-nonzero
/// pivoting (exact scalars need no magnitude pivoting). Throws DomainError
/// when A is singular.
template <ExactScalar Scalar>
Vector<Scalar> solve_exact(Matrix<Scalar> a, Vector<Scalar> b) {
  const Eigen::Index size = a.rows();
  if (a.cols() != size || b.size() != size) throw std::invalid_argument("solve_exact: shape mismatch");
  for (Eigen::Index col = 0; col < size; ++col) {
    Eigen::Index pivot = col;
    while (pivot < size && a(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == size) throw DomainError("not invertible: singular system at column " + std::to_string(col));
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      std::swap(b(pivot), b(col));
    }
    const Scalar inv = Scalar(1) / a(col, col);
    for (Eigen::Index j = col; j < size; ++j) a(col, j) *= inv;
    b(col) *= inv;
    for (Eigen::Index r = 0; r < size; ++r) {
      if (r == col || a(r, col) == Scalar(0)) continue;
      const Scalar factor = a(r, col);
      for (Eigen::Index j = col; j < size; ++j) a(r, j) -= factor * a(col, j);
      b(r) -= factor * b(col);
    }
  }
  return b;
}

}  // namespace weingarten

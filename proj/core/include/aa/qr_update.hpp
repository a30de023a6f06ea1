#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aa/linalg.hpp"

namespace aa {

/// Diagonal entries with |r_ii| < kDropTolerance * max_j |r_jj| mark the
/// factorization as numerically rank deficient.
inline constexpr double kDropTolerance = 1e-14;

/// Thin QR factorization F = Q R of an n x k matrix, k <= capacity, kept up to
/// date under two updates: append a column on the right and drop the leftmost
/// column. Q is stored as a list of k orthonormal n-vectors and R as a dense
/// k x k upper-triangular block (row-major, capacity x capacity storage).
class ThinQr {
public:
  ThinQr(std::size_t n, std::size_t capacity);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return q_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return q_.empty(); }

  std::span<const double> q(std::size_t j) const { return q_[j]; }
  double r(std::size_t i, std::size_t j) const { return r_[i * capacity_ + j]; }

  /// Dense copies, mainly for inspection and tests.
  Matrix q_matrix() const;
  Matrix r_matrix() const;

  /// Appends `col` as the new rightmost column via one modified Gram-Schmidt
  /// sweep, plus one re-projection pass when the projected norm falls below
  /// half the original norm.
  ///
  /// Throws DimensionMismatch or CapacityExceeded. Returns false, leaving the
  /// factorization unchanged, when the new diagonal entry would fall below the
  /// drop tolerance (including a zero or non-finite column).
  bool append_column(std::span<const double> col);

  /// Removes the leftmost column, restoring R to triangular form with Givens
  /// rotations that are accumulated into Q. Throws EmptyFactorization if k = 0.
  void delete_first_column();

  void clear();

  /// Least-squares solution of min ||rhs - F gamma||_2 by back substitution on
  /// R gamma = Q^T rhs. Throws SingularTriangular if some |r_ii| is below the
  /// drop tolerance.
  Vector solve_upper(std::span<const double> rhs) const;

  /// Back substitution on R gamma = qt_rhs for a precomputed Q^T rhs.
  Vector back_substitute(std::span<const double> qt_rhs) const;

  /// Q^T v
  Vector project(std::span<const double> v) const;

  /// max_j |r_jj|, or 0 for an empty factorization.
  double max_abs_diagonal() const;

  /// ||Q^T Q - I||_inf, the largest absolute entry.
  double orthogonality_error() const;

private:
  double& r_ref(std::size_t i, std::size_t j) { return r_[i * capacity_ + j]; }

  std::size_t n_;
  std::size_t capacity_;
  std::vector<Vector> q_;
  std::vector<double> r_;
};

}  // namespace aa

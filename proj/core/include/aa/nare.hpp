#pragma once

#include <cstddef>
#include <span>

#include "aa/fixed_point.hpp"
#include "aa/linalg.hpp"
#include "aa/quadrature.hpp"

namespace aa::nare {

/// Transport-theory Riccati equation XCX - XD - AX + B = 0 with
///   A = Delta - e p^T,  B = e e^T,  C = p p^T,  D = Delta_hat - p e^T,
///   delta_i = 1 / (c w_i (1 + a)),  delta_hat_i = 1 / (c w_i (1 - a)),
///   p_i = c_i / (2 w_i),
/// reduced to the vector system u = u o (P v) + e, v = v o (Pt u) + e with
///   P_ij = p_j / (delta_i + delta_hat_j),  Pt_ij = p_j / (delta_hat_i + delta_j).
///
/// Immutable once built; safe to share read-only between concurrent solves.
class Problem {
public:
  /// Throws ParamOutOfRange unless 0 <= a < 1 and 0 < c <= 1, and
  /// InvalidSize unless n is a positive multiple of 4.
  Problem(double a, double c, std::size_t n);

  double a() const noexcept { return a_; }
  double c() const noexcept { return c_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return 2 * n_; }

  const QuadratureRule& quadrature() const noexcept { return quad_; }
  const Vector& delta() const noexcept { return delta_; }
  const Vector& delta_hat() const noexcept { return delta_hat_; }
  const Vector& p() const noexcept { return p_; }
  const Matrix& P() const noexcept { return P_; }
  const Matrix& P_tilde() const noexcept { return Pt_; }

  /// g(x) = [u o (P v) + e; v o (Pt u) + e] for x = [u; v].
  void g(std::span<const double> x, std::span<double> out) const;
  Vector g(std::span<const double> x) const;

  /// f(x) = g(x) - x.
  void f(std::span<const double> x, std::span<double> out) const;
  Vector f(std::span<const double> x) const;

  /// Jacobian I_2n - G(u, v) of the Riccati residual x - g(x) = -f(x); G is
  /// the Jacobian of g. Block layout in nare.cpp.
  Matrix jacobian(std::span<const double> x) const;

  /// The map g as a FixedPointMap referencing this problem; the problem must
  /// outlive the returned map.
  FixedPointMap map() const;

  /// Lipschitz constant c(1 + a) of f' in the infinity norm.
  double lipschitz_constant() const noexcept { return c_ * (1.0 + a_); }

private:
  void check_dim(std::span<const double> x, const char* where) const;

  double a_;
  double c_;
  std::size_t n_;
  QuadratureRule quad_;
  Vector delta_;
  Vector delta_hat_;
  Vector p_;
  Matrix P_;
  Matrix Pt_;
};

/// The dense coefficient matrices of the Riccati equation.
struct Coefficients {
  Matrix A, B, C, D;
};

Coefficients assemble_coefficients(const Problem& prob);

struct Solution {
  Vector u;
  Vector v;
  Matrix X;
};

/// X_ij = u_i v_j / (delta_i + delta_hat_j).
Solution recover_solution(const Problem& prob, std::span<const double> u, std::span<const double> v);

/// ||XCX - XD - AX + B||_inf / ||B||_inf, evaluated through the rank-one
/// structure of B, C and the off-diagonal parts of A, D (O(n^2)).
double nare_residual(const Problem& prob, const Matrix& X);

/// Same quantity from explicitly assembled A, B, C, D and dense products
/// (O(n^3)); intended for small n and cross-checks.
double nare_residual_dense(const Problem& prob, const Matrix& X);

}  // namespace aa::nare

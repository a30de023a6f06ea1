#include "aa/nare.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aa/errors.hpp"

namespace aa::nare {

Problem::Problem(double a, double c, std::size_t n) : a_(a), c_(c), n_(n) {
  if (!(a >= 0.0 && a < 1.0))
    throw Error(ErrorCode::ParamOutOfRange, "a must lie in [0, 1), got " + std::to_string(a));
  if (!(c > 0.0 && c <= 1.0))
    throw Error(ErrorCode::ParamOutOfRange, "c must lie in (0, 1], got " + std::to_string(c));
  quad_ = gauss_legendre_composite(n);

  delta_.resize(n);
  delta_hat_.resize(n);
  p_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = quad_.nodes[i];
    delta_[i] = 1.0 / (c * w * (1.0 + a));
    delta_hat_[i] = 1.0 / (c * w * (1.0 - a));
    p_[i] = quad_.weights[i] / (2.0 * w);
  }

  P_ = Matrix(n, n);
  Pt_ = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      P_(i, j) = p_[j] / (delta_[i] + delta_hat_[j]);
      Pt_(i, j) = p_[j] / (delta_hat_[i] + delta_[j]);
    }
  }
}

void Problem::check_dim(std::span<const double> x, const char* where) const {
  if (x.size() != 2 * n_)
    throw Error(ErrorCode::DimensionMismatch, std::string(where) + ": expected length " +
                                                  std::to_string(2 * n_) + ", got " +
                                                  std::to_string(x.size()));
}

void Problem::g(std::span<const double> x, std::span<double> out) const {
  check_dim(x, "g");
  check_dim(out, "g output");
  const auto u = x.first(n_);
  const auto v = x.subspan(n_);
  auto gu = out.first(n_);
  auto gv = out.subspan(n_);
  matvec(P_, v, gu);
  matvec(Pt_, u, gv);
  for (std::size_t i = 0; i < n_; ++i) {
    gu[i] = u[i] * gu[i] + 1.0;
    gv[i] = v[i] * gv[i] + 1.0;
  }
}

Vector Problem::g(std::span<const double> x) const {
  Vector out(2 * n_);
  g(x, out);
  return out;
}

void Problem::f(std::span<const double> x, std::span<double> out) const {
  g(x, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= x[i];
}

Vector Problem::f(std::span<const double> x) const {
  Vector out(2 * n_);
  f(x, out);
  return out;
}

// f'(u, v) = I - [[diag(P v),  [u o P(:,j)]_j],
//                 [[v o Pt(:,j)]_j, diag(Pt u)]]
Matrix Problem::jacobian(std::span<const double> x) const {
  check_dim(x, "jacobian");
  const std::size_t n = n_;
  const auto u = x.first(n);
  const auto v = x.subspan(n);
  Vector pv(n), ptu(n);
  matvec(P_, v, pv);
  matvec(Pt_, u, ptu);

  Matrix J = Matrix::identity(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    J(i, i) -= pv[i];
    J(n + i, n + i) -= ptu[i];
    for (std::size_t j = 0; j < n; ++j) {
      J(i, n + j) -= u[i] * P_(i, j);
      J(n + i, j) -= v[i] * Pt_(i, j);
    }
  }
  return J;
}

FixedPointMap Problem::map() const {
  return FixedPointMap{2 * n_, [this](std::span<const double> x, std::span<double> gx) { g(x, gx); }};
}

Coefficients assemble_coefficients(const Problem& prob) {
  const std::size_t n = prob.n();
  const auto& p = prob.p();
  Coefficients co{Matrix(n, n), Matrix(n, n, 1.0), Matrix(n, n), Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      co.A(i, j) = (i == j ? prob.delta()[i] : 0.0) - p[j];
      co.C(i, j) = p[i] * p[j];
      co.D(i, j) = (i == j ? prob.delta_hat()[i] : 0.0) - p[i];
    }
  }
  return co;
}

Solution recover_solution(const Problem& prob, std::span<const double> u, std::span<const double> v) {
  const std::size_t n = prob.n();
  if (u.size() != n || v.size() != n) throw Error(ErrorCode::DimensionMismatch, "recover_solution");
  Solution s{Vector(u.begin(), u.end()), Vector(v.begin(), v.end()), Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s.X(i, j) = u[i] * v[j] / (prob.delta()[i] + prob.delta_hat()[j]);
  return s;
}

double nare_residual(const Problem& prob, const Matrix& X) {
  const std::size_t n = prob.n();
  if (X.rows() != n || X.cols() != n) throw Error(ErrorCode::DimensionMismatch, "nare_residual");
  const auto& p = prob.p();
  const auto& dl = prob.delta();
  const auto& dh = prob.delta_hat();

  // XCX = (Xp)(p^T X), XD = X Dh - (Xp) e^T, AX = Dl X - e (p^T X).
  Vector xp(n, 0.0), ptx(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = X.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s += xi[j] * p[j];
      ptx[j] += p[i] * xi[j];
    }
    xp[i] = s;
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = X.row(i);
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double r = xp[i] * ptx[j] - (xi[j] * dh[j] - xp[i]) - (dl[i] * xi[j] - ptx[j]) + 1.0;
      row += std::abs(r);
    }
    worst = std::max(worst, row);
  }
  return worst / static_cast<double>(n);  // ||e e^T||_inf = n
}

double nare_residual_dense(const Problem& prob, const Matrix& X) {
  const std::size_t n = prob.n();
  if (X.rows() != n || X.cols() != n) throw Error(ErrorCode::DimensionMismatch, "nare_residual_dense");
  const auto co = assemble_coefficients(prob);
  const Matrix r = matmul(matmul(X, co.C), X) - matmul(X, co.D) - matmul(co.A, X) + co.B;
  return norm_inf(r) / norm_inf(co.B);
}

}  // namespace aa::nare

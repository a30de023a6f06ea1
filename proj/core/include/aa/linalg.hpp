#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aa {

using Vector = std::vector<double>;

/// Dense row-major matrix. Only what the solvers and checkers need.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
double norm_inf(std::span<const double> x);

/// y := a*x + y
void axpy(double a, std::span<const double> x, std::span<double> y);

/// y := A*x
void matvec(const Matrix& a, std::span<const double> x, std::span<double> y);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);

/// Maximum absolute row sum.
double norm_inf(const Matrix& a);

/// Inverse by LU with partial pivoting. Throws SingularTriangular on a zero pivot.
Matrix inverse(const Matrix& a);

bool all_finite(std::span<const double> x);

}  // namespace aa

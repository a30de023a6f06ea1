#include "aa/qr_update.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aa/errors.hpp"

namespace aa {

ThinQr::ThinQr(std::size_t n, std::size_t capacity)
    : n_(n), capacity_(capacity), r_(capacity * capacity, 0.0) {
  if (n == 0) throw Error(ErrorCode::InvalidSize, "ThinQr with n = 0");
  if (capacity == 0) throw Error(ErrorCode::InvalidSize, "ThinQr with capacity 0");
  q_.reserve(capacity);
}

Matrix ThinQr::q_matrix() const {
  Matrix out(n_, k());
  for (std::size_t j = 0; j < k(); ++j)
    for (std::size_t i = 0; i < n_; ++i) out(i, j) = q_[j][i];
  return out;
}

Matrix ThinQr::r_matrix() const {
  Matrix out(k(), k());
  for (std::size_t i = 0; i < k(); ++i)
    for (std::size_t j = i; j < k(); ++j) out(i, j) = r(i, j);
  return out;
}

bool ThinQr::append_column(std::span<const double> col) {
  if (col.size() != n_)
    throw Error(ErrorCode::DimensionMismatch,
                "append_column: column has " + std::to_string(col.size()) + " entries, expected " +
                    std::to_string(n_));
  if (k() == capacity_) throw Error(ErrorCode::CapacityExceeded, "append_column: factorization is full");

  const std::size_t kk = k();
  Vector w(col.begin(), col.end());
  const double original = norm2(w);
  if (!std::isfinite(original) || original == 0.0) return false;

  Vector coeff(kk, 0.0);
  for (std::size_t j = 0; j < kk; ++j) {
    const double h = dot(q_[j], w);
    axpy(-h, q_[j], w);
    coeff[j] = h;
  }
  double rkk = norm2(w);

  // "Twice is enough": one more projection if cancellation was severe.
  if (rkk < 0.5 * original) {
    for (std::size_t j = 0; j < kk; ++j) {
      const double h = dot(q_[j], w);
      axpy(-h, q_[j], w);
      coeff[j] += h;
    }
    rkk = norm2(w);
  }

  const double scale = std::max(max_abs_diagonal(), rkk);
  if (!(rkk >= kDropTolerance * scale) || rkk == 0.0) return false;

  for (double& v : w) v /= rkk;
  q_.push_back(std::move(w));
  for (std::size_t j = 0; j < kk; ++j) r_ref(j, kk) = coeff[j];
  r_ref(kk, kk) = rkk;
  return true;
}

void ThinQr::delete_first_column() {
  if (empty()) throw Error(ErrorCode::EmptyFactorization, "delete_first_column on k = 0");
  const std::size_t kk = k();

  // Shift R one column left; the result is upper Hessenberg.
  for (std::size_t i = 0; i < kk; ++i) {
    for (std::size_t j = 0; j + 1 < kk; ++j) r_ref(i, j) = r(i, j + 1);
    r_ref(i, kk - 1) = 0.0;
  }

  for (std::size_t i = 0; i + 1 < kk; ++i) {
    const double a = r(i, i);
    const double b = r(i + 1, i);
    if (b == 0.0) continue;
    const double h = std::hypot(a, b);
    const double c = a / h;
    const double s = b / h;
    for (std::size_t j = i; j + 1 < kk; ++j) {
      const double top = r(i, j);
      const double bot = r(i + 1, j);
      r_ref(i, j) = c * top + s * bot;
      r_ref(i + 1, j) = -s * top + c * bot;
    }
    r_ref(i + 1, i) = 0.0;
    auto& qa = q_[i];
    auto& qb = q_[i + 1];
    for (std::size_t t = 0; t < n_; ++t) {
      const double x = qa[t];
      const double y = qb[t];
      qa[t] = c * x + s * y;
      qb[t] = -s * x + c * y;
    }
  }

  q_.pop_back();
  for (std::size_t j = 0; j < capacity_; ++j) r_ref(kk - 1, j) = 0.0;
}

void ThinQr::clear() {
  q_.clear();
  std::fill(r_.begin(), r_.end(), 0.0);
}

Vector ThinQr::project(std::span<const double> v) const {
  if (v.size() != n_) throw Error(ErrorCode::DimensionMismatch, "project");
  Vector out(k());
  for (std::size_t j = 0; j < k(); ++j) out[j] = dot(q_[j], v);
  return out;
}

Vector ThinQr::back_substitute(std::span<const double> qt_rhs) const {
  const std::size_t kk = k();
  if (qt_rhs.size() != kk) throw Error(ErrorCode::DimensionMismatch, "back_substitute");
  const double tol = kDropTolerance * max_abs_diagonal();
  for (std::size_t i = 0; i < kk; ++i)
    if (!(std::abs(r(i, i)) >= tol) || r(i, i) == 0.0)
      throw Error(ErrorCode::SingularTriangular,
                  "diagonal entry " + std::to_string(i) + " below drop tolerance");

  Vector gamma(qt_rhs.begin(), qt_rhs.end());
  for (std::size_t ii = kk; ii-- > 0;) {
    double s = gamma[ii];
    for (std::size_t j = ii + 1; j < kk; ++j) s -= r(ii, j) * gamma[j];
    gamma[ii] = s / r(ii, ii);
  }
  return gamma;
}

Vector ThinQr::solve_upper(std::span<const double> rhs) const {
  return back_substitute(project(rhs));
}

double ThinQr::max_abs_diagonal() const {
  double m = 0.0;
  for (std::size_t i = 0; i < k(); ++i) m = std::max(m, std::abs(r(i, i)));
  return m;
}

double ThinQr::orthogonality_error() const {
  double err = 0.0;
  for (std::size_t i = 0; i < k(); ++i)
    for (std::size_t j = i; j < k(); ++j)
      err = std::max(err, std::abs(dot(q_[i], q_[j]) - (i == j ? 1.0 : 0.0)));
  return err;
}

}  // namespace aa

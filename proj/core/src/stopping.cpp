#include "aa/stopping.hpp"

#include <algorithm>
#include <cmath>

#include "aa/errors.hpp"
#include "aa/linalg.hpp"

namespace aa {

Vector FixedPointMap::operator()(std::span<const double> x) const {
  if (x.size() != dim) throw Error(ErrorCode::DimensionMismatch, "FixedPointMap input");
  Vector out(dim);
  eval(x, out);
  return out;
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterExceeded: return "max_iter_exceeded";
    case SolveStatus::NonFiniteIterate: return "non_finite_iterate";
    case SolveStatus::DivideByZero: return "divide_by_zero";
  }
  return "unknown";
}

namespace {
double block_change(std::span<const double> nw, std::span<const double> old) {
  double diff = 0.0;
  double size = 0.0;
  for (std::size_t i = 0; i < nw.size(); ++i) {
    diff = std::max(diff, std::abs(nw[i] - old[i]));
    size = std::max(size, std::abs(nw[i]));
  }
  if (size == 0.0) throw Error(ErrorCode::ZeroNorm, "RES: new block has zero infinity norm");
  return diff / size;
}
}  // namespace

ResCheck res_criterion(std::span<const double> x_new, std::span<const double> x_old, std::size_t n) {
  if (x_new.size() != 2 * n || x_old.size() != 2 * n)
    throw Error(ErrorCode::DimensionMismatch, "RES expects two [u; v] vectors of length 2n");
  const double ru = block_change(x_new.first(n), x_old.first(n));
  const double rv = block_change(x_new.subspan(n), x_old.subspan(n));
  const double res = std::max(ru, rv);
  return {res, res <= static_cast<double>(n) * kMachineEps};
}

StoppingRule res_rule(std::size_t n) { return res_rule(n, static_cast<double>(n) * kMachineEps); }

StoppingRule res_rule(std::size_t n, double threshold) {
  return [n, threshold](const StopContext& ctx) {
    const auto check = res_criterion(ctx.x_new, ctx.x_old, n);
    return StopCheck{check.res, check.res <= threshold};
  };
}

StoppingRule residual_norm_rule(double tol) {
  return [tol](const StopContext& ctx) {
    double value = 0.0;
    if (!ctx.residual.empty()) {
      value = norm2(ctx.residual);
    } else {
      Vector d(ctx.x_new.begin(), ctx.x_new.end());
      axpy(-1.0, ctx.x_old, d);
      value = norm2(d);
    }
    return StopCheck{value, value <= tol};
  };
}

StoppingRule never_stop() {
  return [](const StopContext& ctx) {
    Vector d(ctx.x_new.begin(), ctx.x_new.end());
    axpy(-1.0, ctx.x_old, d);
    return StopCheck{norm2(d), false};
  };
}

}  // namespace aa

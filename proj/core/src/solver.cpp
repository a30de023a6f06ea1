#include "aa/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "aa/errors.hpp"

namespace aa {

AaHistory::AaHistory(std::size_t dim, std::size_t depth)
    : depth_(depth), qr_(dim, std::max<std::size_t>(depth, 1)) {}

bool AaHistory::push(std::span<const double> delta_f, std::span<const double> delta_g) {
  if (depth_ == 0) return false;
  if (size() == depth_) {
    qr_.delete_first_column();
    g_cols_.pop_front();
  }
  if (qr_.append_column(delta_f)) {
    g_cols_.emplace_back(delta_g.begin(), delta_g.end());
    return true;
  }
  if (!g_cols_.empty()) {
    qr_.delete_first_column();
    g_cols_.pop_front();
    if (qr_.append_column(delta_f)) {
      g_cols_.emplace_back(delta_g.begin(), delta_g.end());
      return true;
    }
  }
  clear();
  return false;
}

void AaHistory::clear() {
  qr_.clear();
  g_cols_.clear();
}

Vector gamma_to_alpha(std::span<const double> gamma) {
  const std::size_t mk = gamma.size();
  Vector alpha(mk + 1);
  if (mk == 0) {
    alpha[0] = 1.0;
    return alpha;
  }
  alpha[0] = gamma[0];
  for (std::size_t i = 1; i < mk; ++i) alpha[i] = gamma[i] - gamma[i - 1];
  alpha[mk] = 1.0 - gamma[mk - 1];
  return alpha;
}

double closed_form_alpha_m1(std::span<const double> f_k, std::span<const double> f_km1) {
  if (f_k.size() != f_km1.size()) throw Error(ErrorCode::DimensionMismatch, "closed_form_alpha_m1");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < f_k.size(); ++i) {
    const double d = f_k[i] - f_km1[i];
    num += f_k[i] * d;
    den += d * d;
  }
  if (den == 0.0) throw Error(ErrorCode::DegenerateDifference, "f_k equals f_{k-1}");
  return num / den;
}

namespace {
double gain_ratio(std::span<const double> f_k, std::span<const double> combined) {
  if (f_k.size() != combined.size()) throw Error(ErrorCode::DimensionMismatch, "gain_eta");
  const double fn = norm2(f_k);
  if (fn == 0.0) throw Error(ErrorCode::ZeroResidual, "gain undefined for a zero residual");
  return norm2(combined) / fn;
}
}  // namespace

double gain_eta(std::span<const double> f_k, std::span<const double> combined) {
  return std::clamp(gain_ratio(f_k, combined), 0.0, 1.0 + 1e-15);
}

SolveReport aa_solve(const FixedPointMap& map, std::span<const double> x0, const AaConfig& cfg,
                     const StoppingRule& stop) {
  if (x0.size() != map.dim)
    throw Error(ErrorCode::DimensionMismatch, "x0 has " + std::to_string(x0.size()) +
                                                  " entries, map dimension is " + std::to_string(map.dim));
  if (cfg.max_iter == 0) throw Error(ErrorCode::InvalidArgument, "max_iter must be positive");

  const auto start = std::chrono::steady_clock::now();
  const std::size_t d = map.dim;
  SolveReport report;

  Vector x(x0.begin(), x0.end());
  Vector gx(d), f(d), g_prev(d), f_prev(d), x_next(d), delta_f(d), delta_g(d), combined(d);
  AaHistory history(d, cfg.depth);

  auto finish = [&](SolveStatus status, const Vector& xf) {
    report.status = status;
    report.converged = status == SolveStatus::Converged;
    report.x_final = xf;
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  };

  for (std::size_t k = 0;; ++k) {
    map.eval(x, gx);
    for (std::size_t i = 0; i < d; ++i) f[i] = gx[i] - x[i];
    if (!all_finite(f)) {
      report.diagnostic = "non-finite map value at iteration " + std::to_string(k);
      return finish(SolveStatus::NonFiniteIterate, x);
    }
    const double fnorm = norm2(f);
    if (fnorm == 0.0) {
      // x_k is an exact fixed point
      report.iterations = k;
      report.final_res = 0.0;
      return finish(SolveStatus::Converged, x);
    }
    if (k > cfg.max_iter) return finish(SolveStatus::MaxIterExceeded, x);

    IterRecord rec;
    rec.k = k;
    rec.fnorm2 = fnorm;

    if (k > 0) {
      for (std::size_t i = 0; i < d; ++i) {
        delta_f[i] = f[i] - f_prev[i];
        delta_g[i] = gx[i] - g_prev[i];
      }
      history.push(delta_f, delta_g);
    }

    x_next = gx;
    if (history.size() > 0) {
      const ThinQr& qr = history.qr();
      const Vector qtf = qr.project(f);
      rec.gamma = qr.back_substitute(qtf);
      combined = f;
      for (std::size_t j = 0; j < qr.k(); ++j) {
        axpy(-qtf[j], qr.q(j), combined);
        axpy(-rec.gamma[j], history.g_col(j), x_next);
      }
      rec.eta = gain_ratio(f, combined);
    } else {
      rec.eta = 1.0;
    }
    rec.alpha = gamma_to_alpha(rec.gamma);

    if (!all_finite(x_next)) {
      report.diagnostic = "non-finite iterate produced at iteration " + std::to_string(k);
      return finish(SolveStatus::NonFiniteIterate, x);
    }

    // The preamble x_1 = g(x_0) is step k = 0 and is not counted as an
    // iteration; iteration k produces x_{k+1}.
    const StopCheck check = stop(StopContext{k, x_next, x, f});
    rec.res_inf = check.value;
    report.final_res = check.value;
    report.iterations = k;
    if (cfg.record_history && k > 0) report.records.push_back(std::move(rec));

    std::swap(g_prev, gx);
    std::swap(f_prev, f);
    std::swap(x, x_next);
    if (check.fire) return finish(SolveStatus::Converged, x);
  }
}

}  // namespace aa

#pragma once

#include <cstddef>
#include <deque>
#include <span>

#include "aa/fixed_point.hpp"
#include "aa/linalg.hpp"
#include "aa/qr_update.hpp"

namespace aa {

/// Undamped Anderson acceleration settings. Depth 0 degenerates to the plain
/// fixed-point iteration x_{k+1} = g(x_k). All least-squares work is in l2.
struct AaConfig {
  std::size_t depth = 1;
  std::size_t max_iter = 1000;
  bool record_history = true;
};

/// Sliding window of residual differences (kept only through their thin QR
/// factors) and the matching map-value differences.
class AaHistory {
public:
  AaHistory(std::size_t dim, std::size_t depth);

  std::size_t size() const noexcept { return g_cols_.size(); }
  std::size_t depth() const noexcept { return depth_; }
  const ThinQr& qr() const noexcept { return qr_; }
  std::span<const double> g_col(std::size_t j) const { return g_cols_[j]; }

  /// Pushes (delta_f, delta_g), evicting the oldest pair when full. If the new
  /// residual difference is numerically dependent on the window, the oldest
  /// pair is dropped and the push retried once; if it still fails the window
  /// is cleared. Returns whether the pair was stored.
  bool push(std::span<const double> delta_f, std::span<const double> delta_g);

  void clear();

private:
  std::size_t depth_;
  ThinQr qr_;
  std::deque<Vector> g_cols_;
};

/// Runs Anderson acceleration with depth cfg.depth on `map` from `x0`:
///   x_1 = g(x_0); for k >= 1, m_k = min(m, k), gamma from
///   min ||f_k - F_k gamma||_2 and x_{k+1} = g(x_k) - G_k gamma.
/// The run stops when `stop` fires on (x_{k+1}, x_k), when f(x_k) is exactly
/// zero, or once k exceeds cfg.max_iter. The reported iteration count is the
/// final k; the preamble step x_1 = g(x_0) is k = 0 and is not counted, and
/// records are kept for k >= 1 only. Non-finite iterates end the run with
/// status NonFiniteIterate.
SolveReport aa_solve(const FixedPointMap& map, std::span<const double> x0, const AaConfig& cfg,
                     const StoppingRule& stop);

/// alpha_0 = gamma_0, alpha_i = gamma_i - gamma_{i-1}, alpha_m = 1 - gamma_{m-1}.
/// The empty gamma maps to alpha = (1).
Vector gamma_to_alpha(std::span<const double> gamma);

/// Depth-one mixing weight on f_{k-1}:
///   alpha_k = f_k^T (f_k - f_{k-1}) / ||f_k - f_{k-1}||_2^2.
/// Throws DegenerateDifference when f_k = f_{k-1}.
double closed_form_alpha_m1(std::span<const double> f_k, std::span<const double> f_km1);

/// ||combined||_2 / ||f_k||_2, clamped to [0, 1 + 1e-15]. Throws ZeroResidual
/// when ||f_k||_2 = 0.
double gain_eta(std::span<const double> f_k, std::span<const double> combined);

}  // namespace aa

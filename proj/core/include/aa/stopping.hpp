#pragma once

#include <cstddef>
#include <span>

#include "aa/fixed_point.hpp"

namespace aa {

/// 2^-52
inline constexpr double kMachineEps = 0x1p-52;

struct ResCheck {
  double res = 0.0;
  bool fire = false;
};

/// Blockwise relative change for x = [u; v] with u, v of length n:
///   RES = max(|u+ - u|_inf / |u+|_inf, |v+ - v|_inf / |v+|_inf),
/// firing when RES <= n * 2^-52. Throws ZeroNorm if a new block is zero.
ResCheck res_criterion(std::span<const double> x_new, std::span<const double> x_old, std::size_t n);

/// The RES rule above as an injectable StoppingRule; the threshold is n * 2^-52.
StoppingRule res_rule(std::size_t n);

/// Same measure with an explicit threshold.
StoppingRule res_rule(std::size_t n, double threshold);

/// Fires when ||f(x_k)||_2 <= tol. Falls back to ||x_new - x_old||_2 when the
/// method did not supply a residual.
StoppingRule residual_norm_rule(double tol);

/// Never fires (reports ||x_new - x_old||_2); runs go to max_iter or to an
/// exact zero residual.
StoppingRule never_stop();

}  // namespace aa

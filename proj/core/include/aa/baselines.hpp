#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "aa/fixed_point.hpp"
#include "aa/nare.hpp"

namespace aa {

/// Classical fixed-point schemes for the NARE vector system.
///   FP:   u+ = u o (P v) + e,    v+ = v o (Pt u) + e
///   MFP:  u+ = u o (P v) + e,    v+ = v o (Pt u+) + e
///   NBJ:  u+ = e ./ (e - P v),   v+ = e ./ (e - Pt u)
///   NBGS: u+ = e ./ (e - P v),   v+ = e ./ (e - Pt u+)
enum class BaselineKind { FP, MFP, NBJ, NBGS };

std::string_view to_string(BaselineKind kind);
std::optional<BaselineKind> parse_baseline(std::string_view name);

struct BaselineConfig {
  std::size_t max_iter = 1000000;
  /// Records per-iteration diagnostics. For MFP/NBJ/NBGS this costs one extra
  /// evaluation of g per step to report ||f(x_k)||_2.
  bool record_history = false;
};

/// Runs `kind` from x0 = 0 until `stop` fires on (x_{k+1}, x_k). NBJ and NBGS
/// end with status DivideByZero if some 1 - (P v)_i or 1 - (Pt u)_i is not
/// positive.
SolveReport baseline_solve(const nare::Problem& prob, BaselineKind kind, const StoppingRule& stop,
                           const BaselineConfig& cfg = {});

}  // namespace aa

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aa/linalg.hpp"

namespace aa {

/// A map g: R^d -> R^d. `eval` writes g(x) into `gx` and must be deterministic
/// and reentrant (no shared mutable state), so independent solves may run
/// concurrently.
struct FixedPointMap {
  std::size_t dim = 0;
  std::function<void(std::span<const double> x, std::span<double> gx)> eval;

  Vector operator()(std::span<const double> x) const;
};

/// What a stopping rule sees after an update x_old -> x_new. `residual` is
/// f(x_old) = g(x_old) - x_old when the method has it at hand, else empty.
struct StopContext {
  std::size_t iteration = 0;
  std::span<const double> x_new;
  std::span<const double> x_old;
  std::span<const double> residual;
};

struct StopCheck {
  double value = 0.0;
  bool fire = false;
};

using StoppingRule = std::function<StopCheck(const StopContext&)>;

enum class SolveStatus {
  Converged,
  MaxIterExceeded,
  NonFiniteIterate,
  DivideByZero,
};

std::string_view to_string(SolveStatus status);

/// Per-iteration diagnostics. Record k describes the update x_k -> x_{k+1}.
struct IterRecord {
  std::size_t k = 0;
  double res_inf = 0.0;  // stopping-rule value for this update
  double fnorm2 = 0.0;   // ||f(x_k)||_2
  double eta = 1.0;      // optimization gain
  Vector alpha;          // mixing coefficients, sum to one
  Vector gamma;          // least-squares solution of the difference form
};

struct SolveReport {
  bool converged = false;
  SolveStatus status = SolveStatus::MaxIterExceeded;
  std::size_t iterations = 0;
  double final_res = 0.0;
  double wall_time = 0.0;
  std::vector<IterRecord> records;
  Vector x_final;
  std::string diagnostic;
};

}  // namespace aa

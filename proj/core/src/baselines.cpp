#include "aa/baselines.hpp"

#include <chrono>
#include <string>

#include "aa/errors.hpp"

namespace aa {

std::string_view to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::FP: return "FP";
    case BaselineKind::MFP: return "MFP";
    case BaselineKind::NBJ: return "NBJ";
    case BaselineKind::NBGS: return "NBGS";
  }
  return "?";
}

std::optional<BaselineKind> parse_baseline(std::string_view name) {
  if (name == "FP") return BaselineKind::FP;
  if (name == "MFP") return BaselineKind::MFP;
  if (name == "NBJ") return BaselineKind::NBJ;
  if (name == "NBGS") return BaselineKind::NBGS;
  return std::nullopt;
}

namespace {

// One sweep x -> x_next. Returns false on a non-positive NBJ/NBGS denominator.
bool sweep(const nare::Problem& prob, BaselineKind kind, std::span<const double> x,
           std::span<double> x_next, Vector& work) {
  const std::size_t n = prob.n();
  const auto u = x.first(n);
  const auto v = x.subspan(n);
  auto un = x_next.first(n);
  auto vn = x_next.subspan(n);

  matvec(prob.P(), v, work);
  if (kind == BaselineKind::FP || kind == BaselineKind::MFP) {
    for (std::size_t i = 0; i < n; ++i) un[i] = u[i] * work[i] + 1.0;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double den = 1.0 - work[i];
      if (!(den > 0.0)) return false;
      un[i] = 1.0 / den;
    }
  }

  const bool gauss_seidel = kind == BaselineKind::MFP || kind == BaselineKind::NBGS;
  matvec(prob.P_tilde(), gauss_seidel ? std::span<const double>(un) : u, work);
  if (kind == BaselineKind::FP || kind == BaselineKind::MFP) {
    for (std::size_t i = 0; i < n; ++i) vn[i] = v[i] * work[i] + 1.0;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double den = 1.0 - work[i];
      if (!(den > 0.0)) return false;
      vn[i] = 1.0 / den;
    }
  }
  return true;
}

}  // namespace

SolveReport baseline_solve(const nare::Problem& prob, BaselineKind kind, const StoppingRule& stop,
                           const BaselineConfig& cfg) {
  if (cfg.max_iter == 0) throw Error(ErrorCode::InvalidArgument, "max_iter must be positive");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t d = prob.dim();

  SolveReport report;
  Vector x(d, 0.0), x_next(d), work(prob.n()), f;

  auto finish = [&](SolveStatus status) {
    report.status = status;
    report.converged = status == SolveStatus::Converged;
    report.x_final = x;
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  };

  for (std::size_t k = 0; k < cfg.max_iter; ++k) {
    if (!sweep(prob, kind, x, x_next, work)) {
      report.diagnostic = "non-positive denominator in " + std::string(to_string(kind)) +
                          " at iteration " + std::to_string(k);
      return finish(SolveStatus::DivideByZero);
    }
    if (!all_finite(x_next)) {
      report.diagnostic = "non-finite iterate at iteration " + std::to_string(k);
      return finish(SolveStatus::NonFiniteIterate);
    }

    std::span<const double> residual;
    if (kind == BaselineKind::FP) {
      // x_{k+1} = g(x_k), so the step is the residual.
      f.resize(d);
      for (std::size_t i = 0; i < d; ++i) f[i] = x_next[i] - x[i];
      residual = f;
    } else if (cfg.record_history) {
      f = prob.f(x);
      residual = f;
    }

    const StopCheck check = stop(StopContext{k, x_next, x, residual});
    report.final_res = check.value;
    ++report.iterations;
    if (cfg.record_history) {
      IterRecord rec;
      rec.k = k;
      rec.res_inf = check.value;
      rec.fnorm2 = norm2(residual);
      rec.eta = 1.0;
      rec.alpha = {1.0};
      report.records.push_back(std::move(rec));
    }
    std::swap(x, x_next);
    if (check.fire) return finish(SolveStatus::Converged);
  }
  return finish(SolveStatus::MaxIterExceeded);
}

}  // namespace aa

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aa/fixed_point.hpp"
#include "aa/linalg.hpp"

namespace aa::theory {

/// Constants entering the local convergence conditions for Anderson
/// acceleration on f(x) = g(x) - x with a Hoelder continuous Jacobian.
struct TheoryParams {
  double nu = 1.0;        // Hoelder exponent, (0, 1]
  double h_nu = 1.0;      // Hoelder constant, > 0
  double theta = 0.5;     // contraction factor of g, (0, 1)
  double m_alpha = 1.0;   // bound on sum_j |alpha_j|, >= 1
  double kappa = 1.0;     // condition number of f'(x*), >= 1
  double inv_norm = 1.0;  // ||f'(x*)^{-1}||, > 0
  double x0_dist = 0.0;   // ||x0 - x*||, >= 0
  double eta = 1.0;       // optimization gain, [0, 1]

  double tau() const noexcept { return theta * eta; }
  /// ||f'(x*)|| = kappa / ||f'(x*)^{-1}||
  double jac_norm() const noexcept { return kappa / inv_norm; }
  /// Throws ParamOutOfRange if a field is outside its range.
  void validate() const;
};

struct RootResult {
  double q = 0.0;
  double lo = 0.0;  // m tau / (m + 1)
  double hi = 1.0;
  double poly_residual = 0.0;  // |q^{m+1} - tau q^m - zeta|
};

/// Unique root of q^{m+1} - tau q^m - zeta = 0 in (m tau / (m + 1), 1), by
/// bisection. Throws HypothesisViolated unless m >= 1, tau in (0, 1) and
/// 0 <= zeta < 1 - tau.
RootResult solve_q(std::size_t m, double tau, double zeta);

/// Depth-one closed form (tau + sqrt(tau^2 + 4 zeta)) / 2.
double q_closed_form_m1(double tau, double zeta);

/// zeta = (2+nu)^nu H M (1 + M^nu) / nu^(1+nu) * kappa * ||f'(x*)^-1|| * ||x0 - x*||^nu
double zeta_general(const TheoryParams& p);

/// Lipschitz (nu = 1) form 3 L M (1 + M) kappa ||f'(x*)^-1|| ||x0 - x*||.
double zeta_lipschitz(const TheoryParams& p);

struct Radii {
  double r_nu = 0.0;
  double r_hat = 0.0;
  double ball() const noexcept { return r_nu < r_hat ? r_nu : r_hat; }
};

///   r_nu  = (1 / (H ||f'(x*)^-1||))^(1/nu)
///   r_hat = ((1 - theta) nu / (M (1 + M^nu)))^(1/nu) * nu r_nu / ((2 + nu) kappa)
Radii radii(const TheoryParams& p);

struct ConditionReport {
  std::size_t m = 0;
  double tau = 0.0;
  double zeta = 0.0;
  double q = 0.0;
  bool zeta_condition = false;        // zeta < 1 - tau
  double radius_lhs = 0.0;            // (2+nu)/nu * q * M * kappa
  bool radius_condition = false;      // radius_lhs <= 1 (q M kappa <= 1/3 when nu = 1)
  Radii radii;
  bool x0_in_ball = false;            // x0_dist < min(r_nu, r_hat)
  bool history_premise_assumed = true;  // ||f(x_l)|| <= q^l ||f(x0)|| for l <= m is assumed, not checked
  bool all_hold() const noexcept { return zeta_condition && radius_condition && x0_in_ball; }
};

/// Evaluates the local convergence conditions. Throws HypothesisViolated
/// through solve_q when zeta >= 1 - tau.
ConditionReport check_theorem_conditions(std::size_t m, const TheoryParams& p);

std::string to_json(const ConditionReport& r);

struct ResidualBracket {
  double lo = 0.0;
  double hi = 0.0;
  bool ok = false;
};

/// Two-sided residual bound inside the ball of radius r_nu:
///   nu dist / ((1+nu) ||f'(x*)^-1||) <= ||f(x)|| <= (2+nu)/(1+nu) ||f'(x*)|| dist.
/// Throws OutsideBall if dist >= r_nu.
ResidualBracket residual_bracket(double fnorm, const TheoryParams& p, double dist);

/// Depth-one one-step bound on ||f(x_{k+1})|| from ||f(x_k)||, eta_k, alpha_k.
/// Throws DegenerateAlpha if alpha = 0 while eta < 1.
double m1_residual_bound(double fnorm_k, double eta_k, double alpha_k, const TheoryParams& p);

/// max over the last ceil(len/2) indices k >= 1 of (fnorms[k] / fnorms[0])^(1/k).
/// Throws EmptyHistory for fewer than three entries or a zero first entry.
double empirical_r_factor(std::span<const double> fnorms);

enum class Norm { L2, Inf };

/// max ||g(x) - g(y)|| / ||x - y|| over the sample pairs, a lower witness for
/// the contraction factor. Throws DegeneratePair if some x = y.
double empirical_contraction(const FixedPointMap& map, const std::vector<std::pair<Vector, Vector>>& samples,
                             Norm norm = Norm::Inf);

/// Contraction factor 2 c (1 + a) / (1 + sqrt(1 - 4 Phi)) of the NARE map on
/// the nonnegative ball of radius 2 / (1 + sqrt(1 - 4 Phi)). Phi in (0, 1/4].
double nare_theta_from_phi(double a, double c, double phi);

}  // namespace aa::theory

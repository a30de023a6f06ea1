#include "aa/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "aa/errors.hpp"

namespace aa::theory {

void TheoryParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::ParamOutOfRange, what);
  };
  require(nu > 0.0 && nu <= 1.0, "nu must lie in (0, 1]");
  require(h_nu > 0.0, "H_nu must be positive");
  require(theta > 0.0 && theta < 1.0, "theta must lie in (0, 1)");
  require(m_alpha >= 1.0, "M_alpha must be at least 1");
  require(kappa >= 1.0, "kappa must be at least 1");
  require(inv_norm > 0.0, "||f'(x*)^-1|| must be positive");
  require(x0_dist >= 0.0, "||x0 - x*|| must be nonnegative");
  require(eta >= 0.0 && eta <= 1.0 + 1e-12, "eta must lie in [0, 1]");
}

RootResult solve_q(std::size_t m, double tau, double zeta) {
  if (m < 1) throw Error(ErrorCode::HypothesisViolated, "depth m must be at least 1");
  if (!(tau > 0.0 && tau < 1.0)) throw Error(ErrorCode::HypothesisViolated, "tau must lie in (0, 1)");
  if (!(zeta >= 0.0 && zeta < 1.0 - tau))
    throw Error(ErrorCode::HypothesisViolated, "need 0 <= zeta < 1 - tau");

  const double md = static_cast<double>(m);
  auto poly = [&](double q) { return std::pow(q, md) * (q - tau) - zeta; };

  RootResult res;
  res.lo = md * tau / (md + 1.0);
  res.hi = 1.0;
  // poly < 0 at the left end (it decreases from -zeta on (0, lo)) and
  // 1 - tau - zeta > 0 at the right end.
  double lo = res.lo;
  double hi = res.hi;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = poly(mid);
    if (v == 0.0) {
      lo = hi = mid;
      break;
    }
    (v < 0.0 ? lo : hi) = mid;
  }
  res.q = 0.5 * (lo + hi);
  res.poly_residual = std::abs(poly(res.q));
  return res;
}

double q_closed_form_m1(double tau, double zeta) { return 0.5 * (tau + std::sqrt(tau * tau + 4.0 * zeta)); }

double zeta_general(const TheoryParams& p) {
  const double nu = p.nu;
  const double lead = std::pow(2.0 + nu, nu) * p.h_nu * p.m_alpha * (1.0 + std::pow(p.m_alpha, nu)) /
                      std::pow(nu, 1.0 + nu);
  return lead * p.kappa * p.inv_norm * std::pow(p.x0_dist, nu);
}

double zeta_lipschitz(const TheoryParams& p) {
  return 3.0 * p.h_nu * p.m_alpha * (1.0 + p.m_alpha) * p.kappa * p.inv_norm * p.x0_dist;
}

Radii radii(const TheoryParams& p) {
  const double nu = p.nu;
  Radii r;
  r.r_nu = std::pow(1.0 / (p.h_nu * p.inv_norm), 1.0 / nu);
  r.r_hat = std::pow((1.0 - p.theta) * nu / (p.m_alpha * (1.0 + std::pow(p.m_alpha, nu))), 1.0 / nu) *
            nu * r.r_nu / ((2.0 + nu) * p.kappa);
  return r;
}

ConditionReport check_theorem_conditions(std::size_t m, const TheoryParams& p) {
  ConditionReport rep;
  rep.m = m;
  rep.tau = p.tau();
  rep.zeta = zeta_general(p);
  rep.zeta_condition = rep.zeta < 1.0 - rep.tau;
  rep.q = solve_q(m, rep.tau, rep.zeta).q;
  rep.radius_lhs = (2.0 + p.nu) / p.nu * rep.q * p.m_alpha * p.kappa;
  rep.radius_condition = rep.radius_lhs <= 1.0;
  rep.radii = radii(p);
  rep.x0_in_ball = p.x0_dist < rep.radii.ball();
  return rep;
}

std::string to_json(const ConditionReport& r) {
  nlohmann::json j{
      {"m", r.m},
      {"tau", r.tau},
      {"zeta", r.zeta},
      {"q", r.q},
      {"zeta_condition", r.zeta_condition},
      {"radius_lhs", r.radius_lhs},
      {"radius_condition", r.radius_condition},
      {"r_nu", r.radii.r_nu},
      {"r_hat", r.radii.r_hat},
      {"x0_in_ball", r.x0_in_ball},
      {"history_premise_assumed", r.history_premise_assumed},
      {"all_hold", r.all_hold()},
  };
  return j.dump(2);
}

ResidualBracket residual_bracket(double fnorm, const TheoryParams& p, double dist) {
  const double r_nu = radii(p).r_nu;
  if (!(dist < r_nu))
    throw Error(ErrorCode::OutsideBall, "dist " + std::to_string(dist) + " >= r_nu " + std::to_string(r_nu));
  ResidualBracket b;
  b.lo = p.nu * dist / ((1.0 + p.nu) * p.inv_norm);
  b.hi = (2.0 + p.nu) / (1.0 + p.nu) * p.jac_norm() * dist;
  b.ok = b.lo <= fnorm && fnorm <= b.hi;
  return b;
}

double m1_residual_bound(double fnorm_k, double eta_k, double alpha_k, const TheoryParams& p) {
  const double eta = std::clamp(eta_k, 0.0, 1.0);
  const double s = std::sqrt(1.0 - eta * eta);
  if (alpha_k == 0.0 && s > 0.0)
    throw Error(ErrorCode::DegenerateAlpha, "alpha_k = 0 with eta_k < 1");
  const double th = p.theta;
  const double nu = p.nu;
  const double first = th * (1.0 + (1.0 + th) / (1.0 - th) * s) * fnorm_k;
  const double a = std::pow(1.0 + th / (1.0 - th) * s, 1.0 + nu);
  const double b = s == 0.0 ? 0.0 : std::pow(s / (1.0 - th), 1.0 + nu) / std::pow(std::abs(alpha_k), nu);
  return first + p.h_nu / (1.0 + nu) * (a + b) * std::pow(fnorm_k, 1.0 + nu);
}

double empirical_r_factor(std::span<const double> fnorms) {
  if (fnorms.size() < 3) throw Error(ErrorCode::EmptyHistory, "need at least three residual norms");
  if (!(fnorms[0] > 0.0)) throw Error(ErrorCode::EmptyHistory, "first residual norm must be positive");
  const std::size_t len = fnorms.size();
  const std::size_t half = (len + 1) / 2;
  double best = 0.0;
  for (std::size_t k = std::max<std::size_t>(len - half, 1); k < len; ++k)
    best = std::max(best, std::pow(fnorms[k] / fnorms[0], 1.0 / static_cast<double>(k)));
  return best;
}

double empirical_contraction(const FixedPointMap& map, const std::vector<std::pair<Vector, Vector>>& samples,
                             Norm norm) {
  auto measure = [norm](std::span<const double> v) { return norm == Norm::L2 ? norm2(v) : norm_inf(v); };
  double best = 0.0;
  Vector gx(map.dim), gy(map.dim), dx(map.dim), dg(map.dim);
  for (const auto& [x, y] : samples) {
    if (x.size() != map.dim || y.size() != map.dim)
      throw Error(ErrorCode::DimensionMismatch, "empirical_contraction sample");
    for (std::size_t i = 0; i < map.dim; ++i) dx[i] = x[i] - y[i];
    const double den = measure(dx);
    if (den == 0.0) throw Error(ErrorCode::DegeneratePair, "sample pair with x = y");
    map.eval(x, gx);
    map.eval(y, gy);
    for (std::size_t i = 0; i < map.dim; ++i) dg[i] = gx[i] - gy[i];
    best = std::max(best, measure(dg) / den);
  }
  return best;
}

double nare_theta_from_phi(double a, double c, double phi) {
  if (!(phi > 0.0 && phi <= 0.25)) throw Error(ErrorCode::ParamOutOfRange, "Phi must lie in (0, 1/4]");
  return 2.0 * c * (1.0 + a) / (1.0 + std::sqrt(1.0 - 4.0 * phi));
}

}  // namespace aa::theory

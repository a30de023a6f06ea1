#include <cmath>
#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "aa/baselines.hpp"
#include "aa/errors.hpp"
#include "aa/nare.hpp"
#include "aa/solver.hpp"
#include "aa/stopping.hpp"
#include "test_support.hpp"

namespace aa {
namespace {

FixedPointMap affine_1d(double slope, double shift) {
  return {1, [=](std::span<const double> x, std::span<double> gx) { gx[0] = slope * x[0] + shift; }};
}

// Wraps a map and remembers every (x, g(x)) it was asked for.
struct LoggingMap {
  struct Log {
    std::vector<Vector> xs;
    std::vector<Vector> gs;
  };
  std::shared_ptr<Log> log = std::make_shared<Log>();
  FixedPointMap map;

  explicit LoggingMap(FixedPointMap inner) {
    auto lg = log;
    map.dim = inner.dim;
    map.eval = [lg, inner](std::span<const double> x, std::span<double> gx) {
      inner.eval(x, gx);
      lg->xs.emplace_back(x.begin(), x.end());
      lg->gs.emplace_back(gx.begin(), gx.end());
    };
  }
};

TEST(GammaToAlpha, Examples) {
  const Vector a = gamma_to_alpha(Vector{0.3, 0.5});
  ASSERT_EQ(a.size(), 3u);
  EXPECT_DOUBLE_EQ(a[0], 0.3);
  EXPECT_DOUBLE_EQ(a[1], 0.2);
  EXPECT_DOUBLE_EQ(a[2], 0.5);

  const Vector b = gamma_to_alpha(Vector{0.0});
  EXPECT_EQ(b, (Vector{0.0, 1.0}));

  const Vector c = gamma_to_alpha(Vector{1.2});
  EXPECT_DOUBLE_EQ(c[0], 1.2);
  EXPECT_NEAR(c[1], -0.2, 1e-15);
  EXPECT_NEAR(c[0] + c[1], 1.0, 1e-15);

  EXPECT_EQ(gamma_to_alpha(Vector{}), (Vector{1.0}));
}

TEST(GammaToAlpha, SumsToOne) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const Vector g = test::random_vector(rng, 1 + t % 8, -5.0, 5.0);
    const Vector a = gamma_to_alpha(g);
    double s = 0.0;
    for (double x : a) s += x;
    EXPECT_NEAR(s, 1.0, 1e-14);
  }
}

// Minimizes ||(1 - t) f_k + t f_km1|| over a fine grid, refined twice.
double grid_search_alpha(const Vector& fk, const Vector& fkm1) {
  auto cost = [&](double t) {
    double s = 0.0;
    for (std::size_t i = 0; i < fk.size(); ++i) {
      const double r = (1.0 - t) * fk[i] + t * fkm1[i];
      s += r * r;
    }
    return s;
  };
  double lo = -10.0, hi = 10.0;
  for (int pass = 0; pass < 4; ++pass) {
    double best = lo, best_cost = cost(lo);
    const int steps = 2000;
    for (int i = 1; i <= steps; ++i) {
      const double t = lo + (hi - lo) * i / steps;
      if (cost(t) < best_cost) best_cost = cost(t), best = t;
    }
    const double h = (hi - lo) / steps;
    lo = best - h;
    hi = best + h;
  }
  return 0.5 * (lo + hi);
}

TEST(ClosedFormAlpha, Examples) {
  EXPECT_DOUBLE_EQ(closed_form_alpha_m1(Vector{1.0, 0.0}, Vector{0.0, 1.0}), 0.5);
  EXPECT_NEAR(grid_search_alpha({1.0, 0.0}, {0.0, 1.0}), 0.5, 1e-7);

  const Vector fk{0.3, -1.1, 2.0};
  const Vector fkm1{0.6, -2.2, 4.0};
  EXPECT_NEAR(closed_form_alpha_m1(fk, fkm1), -1.0, 1e-15);

  // orthonormal pair: alpha = 1/2, eta = 1/sqrt(2)
  const Vector e1{1.0, 0.0}, e2{0.0, 1.0};
  const double al = closed_form_alpha_m1(e1, e2);
  EXPECT_DOUBLE_EQ(al, 0.5);
  const Vector comb{(1 - al) * e1[0] + al * e2[0], (1 - al) * e1[1] + al * e2[1]};
  EXPECT_NEAR(gain_eta(e1, comb), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(ClosedFormAlpha, MatchesGridSearch) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const Vector fk = test::random_vector(rng, 5);
    const Vector fkm1 = test::random_vector(rng, 5);
    const double cf = closed_form_alpha_m1(fk, fkm1);
    if (std::abs(cf) > 9.0) continue;
    EXPECT_NEAR(cf, grid_search_alpha(fk, fkm1), 1e-8);
  }
}

TEST(ClosedFormAlpha, EqualResidualsThrow) {
  try {
    (void)closed_form_alpha_m1(Vector{1.0, 2.0}, Vector{1.0, 2.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateDifference);
  }
}

TEST(GainEta, Examples) {
  const Vector f{1.0, 0.0};
  EXPECT_DOUBLE_EQ(gain_eta(f, f), 1.0);
  EXPECT_DOUBLE_EQ(gain_eta(f, Vector{0.0, 0.0}), 0.0);
  EXPECT_NEAR(gain_eta(f, Vector{0.5, 0.5}), std::sqrt(0.5), 1e-15);
  try {
    (void)gain_eta(Vector{0.0, 0.0}, Vector{0.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroResidual);
  }
}

TEST(AaSolve, IdentityMapStopsImmediately) {
  const FixedPointMap id{3, [](std::span<const double> x, std::span<double> gx) {
                           std::copy(x.begin(), x.end(), gx.begin());
                         }};
  const Vector x0{1.0, -2.0, 3.5};
  const SolveReport r = aa_solve(id, x0, AaConfig{2, 100, true}, never_stop());
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_EQ(r.final_res, 0.0);
  EXPECT_EQ(r.x_final, x0);
}

TEST(AaSolve, AffineScalarMapExactInTwoSteps) {
  const SolveReport r = aa_solve(affine_1d(0.5, 1.0), Vector{0.0}, AaConfig{1, 100, true}, never_stop());
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 2u);
  EXPECT_EQ(r.final_res, 0.0);
  EXPECT_DOUBLE_EQ(r.x_final[0], 2.0);
}

TEST(AaSolve, DimensionMismatchThrows) {
  EXPECT_THROW((void)aa_solve(affine_1d(0.5, 1.0), Vector{0.0, 1.0}, AaConfig{}, never_stop()), Error);
}

TEST(AaSolve, MaxIterExceeded) {
  const FixedPointMap rot{2, [](std::span<const double> x, std::span<double> gx) {
                            gx[0] = 0.99 * x[1] + 1.0;
                            gx[1] = -0.99 * x[0];
                          }};
  const SolveReport r = aa_solve(rot, Vector{0.0, 0.0}, AaConfig{0, 5, false}, never_stop());
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.status, SolveStatus::MaxIterExceeded);
}

TEST(AaSolve, NonFiniteIterateAborts) {
  const FixedPointMap blow{1, [](std::span<const double> x, std::span<double> gx) {
                             gx[0] = x[0] > 1.0 ? std::numeric_limits<double>::infinity() : x[0] + 2.0;
                           }};
  const SolveReport r = aa_solve(blow, Vector{0.0}, AaConfig{1, 100, true}, never_stop());
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.status, SolveStatus::NonFiniteIterate);
  EXPECT_FALSE(r.diagnostic.empty());
}

TEST(AaSolve, DepthZeroIsPicardIteration) {
  const nare::Problem prob(0.5, 0.5, 16);
  const Vector x0(prob.dim(), 0.0);
  const SolveReport aa = aa_solve(prob.map(), x0, AaConfig{0, 1000, false}, res_rule(prob.n()));
  const SolveReport fp = baseline_solve(prob, BaselineKind::FP, res_rule(prob.n()));
  ASSERT_TRUE(aa.converged);
  ASSERT_TRUE(fp.converged);
  // same iterates; the Anderson count leaves out the x_1 = g(x_0) preamble
  EXPECT_EQ(aa.iterations + 1, fp.iterations);
  EXPECT_EQ(aa.x_final, fp.x_final);
}

TEST(AaSolve, NareTableRowAa3) {
  const nare::Problem prob(0.1, 0.9, 1024);
  const SolveReport r = aa_solve(prob.map(), Vector(prob.dim(), 0.0), AaConfig{3, 1000, true}, res_rule(1024));
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(static_cast<double>(r.iterations), 22.0, 3.0);
  EXPECT_LE(r.final_res, 1024 * kMachineEps);
}

// m = 1: the projection removes |gamma| * ||df|| of f_k, the rest is eta ||f_k||.
TEST(AaSolveProperty, DepthOneGainIdentity) {
  const nare::Problem prob(0.1, 0.9, 64);
  LoggingMap lm(prob.map());
  const SolveReport r = aa_solve(lm.map, Vector(prob.dim(), 0.0), AaConfig{1, 1000, true}, res_rule(64));
  ASSERT_TRUE(r.converged);
  const auto& log = *lm.log;
  ASSERT_GE(log.xs.size(), r.records.size() + 1);
  for (const IterRecord& rec : r.records) {
    const std::size_t k = rec.k;
    Vector fk(prob.dim()), fkm1(prob.dim()), df(prob.dim());
    for (std::size_t i = 0; i < fk.size(); ++i) {
      fk[i] = log.gs[k][i] - log.xs[k][i];
      fkm1[i] = log.gs[k - 1][i] - log.xs[k - 1][i];
      df[i] = fk[i] - fkm1[i];
    }
    ASSERT_EQ(rec.gamma.size(), 1u);
    const double lhs = std::abs(rec.gamma[0]) * norm2(df);
    const double eta = std::min(rec.eta, 1.0);
    const double rhs = std::sqrt(1.0 - eta * eta) * norm2(fk);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * norm2(fk)) << "k=" << k;
    EXPECT_NEAR(rec.gamma[0], closed_form_alpha_m1(fk, fkm1), 1e-8 * (1.0 + std::abs(rec.gamma[0])));
    // the update formula x_{k+1} = (1 - alpha) g_k + alpha g_{k-1}
    const Vector& xnext = k + 1 < log.xs.size() ? log.xs[k + 1] : r.x_final;
    const double al = rec.gamma[0];
    for (std::size_t i = 0; i < fk.size(); ++i)
      EXPECT_NEAR(xnext[i], (1 - al) * log.gs[k][i] + al * log.gs[k - 1][i], 1e-12 * (1 + std::abs(xnext[i])));
  }
}

TEST(AaSolveProperty, GammaMatchesNormalEquations) {
  const nare::Problem prob(0.5, 0.5, 32);
  LoggingMap lm(prob.map());
  const std::size_t m = 3;
  const SolveReport r = aa_solve(lm.map, Vector(prob.dim(), 0.0), AaConfig{m, 1000, true}, res_rule(32));
  ASSERT_TRUE(r.converged);
  const auto& log = *lm.log;
  const auto d = static_cast<Eigen::Index>(prob.dim());
  auto f_at = [&](std::size_t k) {
    Eigen::VectorXd f(d);
    for (Eigen::Index i = 0; i < d; ++i) f(i) = log.gs[k][i] - log.xs[k][i];
    return f;
  };
  for (const IterRecord& rec : r.records) {
    const std::size_t k = rec.k;
    const std::size_t mk = std::min(m, k);
    ASSERT_EQ(rec.gamma.size(), mk);
    Eigen::MatrixXd F(d, mk);
    for (std::size_t j = 0; j < mk; ++j) F.col(j) = f_at(k - mk + j + 1) - f_at(k - mk + j);
    const Eigen::VectorXd fk = f_at(k);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(F);
    const double cond = svd.singularValues()(0) / svd.singularValues()(mk - 1);
    if (cond > 1e6) continue;
    const Eigen::VectorXd ne = (F.transpose() * F).ldlt().solve(F.transpose() * fk);
    EXPECT_LE((test::to_eigen(rec.gamma) - ne).norm(), 1e-8 * ne.norm()) << "k=" << k;
  }
}

TEST(AaSolveProperty, RecordsAreWellFormed) {
  for (std::size_t m : {1u, 3u, 5u, 8u}) {
    const nare::Problem prob(0.01, 0.99, 64);
    const SolveReport r = aa_solve(prob.map(), Vector(prob.dim(), 0.0), AaConfig{m, 1000, true}, res_rule(64));
    ASSERT_TRUE(r.converged);
    EXPECT_LE(r.final_res, 64 * kMachineEps);
    ASSERT_EQ(r.records.size(), r.iterations);
    for (const IterRecord& rec : r.records) {
      EXPECT_GE(rec.eta, 0.0);
      EXPECT_LE(rec.eta, 1.0 + 1e-12);
      double s = 0.0;
      for (double a : rec.alpha) s += a;
      EXPECT_NEAR(s, 1.0, 1e-12);
      EXPECT_EQ(rec.alpha.size(), rec.gamma.size() + 1);
      EXPECT_LE(rec.gamma.size(), m);
    }
  }
}

TEST(AaSolveProperty, MapIsDeterministic) {
  const nare::Problem prob(0.3, 0.7, 32);
  const SolveReport a = aa_solve(prob.map(), Vector(prob.dim(), 0.0), AaConfig{3, 1000, false}, res_rule(32));
  const SolveReport b = aa_solve(prob.map(), Vector(prob.dim(), 0.0), AaConfig{3, 1000, false}, res_rule(32));
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.x_final, b.x_final);
}

TEST(AaHistory, DegeneratePushIsHandled) {
  AaHistory h(3, 2);
  EXPECT_TRUE(h.push(Vector{1.0, 0.0, 0.0}, Vector{1.0, 1.0, 1.0}));
  EXPECT_TRUE(h.push(Vector{0.0, 1.0, 0.0}, Vector{2.0, 2.0, 2.0}));
  // full window, the new column evicts the oldest
  EXPECT_TRUE(h.push(Vector{0.0, 0.0, 1.0}, Vector{3.0, 3.0, 3.0}));
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(h.g_col(0)[0], 2.0);
  // parallel to the newest column once the oldest is evicted: dropping it
  // makes room and the retry succeeds
  EXPECT_TRUE(h.push(Vector{0.0, 0.0, 2.0}, Vector{4.0, 4.0, 4.0}));
  EXPECT_EQ(h.size(), 1u);
  EXPECT_EQ(h.g_col(0)[0], 4.0);
  // a zero difference never fits, the window is cleared
  EXPECT_FALSE(h.push(Vector{0.0, 0.0, 0.0}, Vector{5.0, 5.0, 5.0}));
  EXPECT_EQ(h.size(), 0u);
  EXPECT_EQ(h.size(), h.qr().k());
}

}  // namespace
}  // namespace aa

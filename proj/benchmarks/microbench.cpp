#include <random>

#include <benchmark/benchmark.h>

#include "aa/baselines.hpp"
#include "aa/nare.hpp"
#include "aa/qr_update.hpp"
#include "aa/solver.hpp"
#include "aa/stopping.hpp"

namespace {

aa::Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(0.0, 2.0);
  aa::Vector v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

void BM_MapEval(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const aa::nare::Problem prob(0.1, 0.9, n);
  std::mt19937_64 rng(1);
  const aa::Vector x = random_vector(rng, prob.dim());
  aa::Vector gx(prob.dim());
  for (auto _ : state) {
    prob.g(x, gx);
    benchmark::DoNotOptimize(gx.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(2 * n * n));
}
BENCHMARK(BM_MapEval)->Arg(256)->Arg(1024)->Arg(2048);

// one sliding-window step: drop the oldest column, append a new one
void BM_QrSlide(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(2);
  aa::ThinQr qr(n, m);
  for (std::size_t j = 0; j < m; ++j) qr.append_column(random_vector(rng, n));
  std::vector<aa::Vector> pool;
  for (int i = 0; i < 16; ++i) pool.push_back(random_vector(rng, n));
  std::size_t next = 0;
  for (auto _ : state) {
    qr.delete_first_column();
    qr.append_column(pool[next++ % pool.size()]);
  }
}
BENCHMARK(BM_QrSlide)->Args({2048, 1})->Args({2048, 3})->Args({2048, 8});

void BM_AndersonSolve(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const aa::nare::Problem prob(1e-4, 1 - 1e-4, 1024);
  const aa::Vector x0(prob.dim(), 0.0);
  std::size_t its = 0;
  for (auto _ : state) {
    const aa::SolveReport r = aa::aa_solve(prob.map(), x0, aa::AaConfig{m, 1000, false}, aa::res_rule(1024));
    its = r.iterations;
  }
  state.counters["IT"] = static_cast<double>(its);
}
BENCHMARK(BM_AndersonSolve)->Arg(1)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Nbgs(benchmark::State& state) {
  const aa::nare::Problem prob(0.1, 0.9, 1024);
  std::size_t its = 0;
  for (auto _ : state) its = aa::baseline_solve(prob, aa::BaselineKind::NBGS, aa::res_rule(1024)).iterations;
  state.counters["IT"] = static_cast<double>(its);
}
BENCHMARK(BM_Nbgs)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

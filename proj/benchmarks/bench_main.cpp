#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "relaxfr/basis.hpp"
#include "relaxfr/equations.hpp"
#include "relaxfr/indicator.hpp"
#include "relaxfr/positivity.hpp"
#include "relaxfr/runner.hpp"

using namespace relaxfr;

namespace {

void BM_StepBurgers1D(benchmark::State& state) {
  RunConfig cfg;
  cfg.problem = "burgers_sine";
  cfg.nx = static_cast<int>(state.range(0));
  cfg.t_final = 1e9;
  Simulation sim(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(sim.step());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StepBurgers1D)->Arg(20)->Arg(160)->Unit(benchmark::kMicrosecond);

void BM_StepEuler2D(benchmark::State& state) {
  RunConfig cfg;
  cfg.problem = "khi_2d";
  cfg.nx = static_cast<int>(state.range(0));
  cfg.ny = cfg.nx;
  cfg.t_final = 1e9;
  Simulation sim(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(sim.step());
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_StepEuler2D)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_ModalEnergy2D(benchmark::State& state) {
  const BasisData basis = build_basis(3, NodeKind::GaussLegendre);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  std::vector<double> q(16);
  for (double& v : q) v = dist(rng);
  for (auto _ : state) benchmark::DoNotOptimize(modal_energy(q, basis, 2));
}
BENCHMARK(BM_ModalEnergy2D);

void BM_LimitElement2D(benchmark::State& state) {
  const BasisData basis = build_basis(3, NodeKind::GaussLegendre);
  std::vector<double> w(16);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) w[4 * j + i] = basis.weights[i] * basis.weights[j];
  const CompressibleEuler eq(2);
  std::vector<double> prim{1.0, 0.2, -0.1, 1.0};
  std::vector<double> base(16 * 4);
  for (int q = 0; q < 16; ++q) {
    prim[3] = q == 5 ? 0.01 : 1.0;
    eq.to_conservative(prim, std::span<double>(base).subspan(4 * q, 4));
  }
  const PositivityConfig cfg;
  std::vector<double> s;
  for (auto _ : state) {
    s = base;
    benchmark::DoNotOptimize(limit_element(s, 4, w, eq, cfg).theta_pressure);
  }
}
BENCHMARK(BM_LimitElement2D);

}  // namespace

BENCHMARK_MAIN();

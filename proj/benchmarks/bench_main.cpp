#include <benchmark/benchmark.h>

#include "chbox/basis.hpp"
#include "chbox/cnc.hpp"
#include "chbox/engine.hpp"
#include "chbox/optimize.hpp"
#include "chbox/pt.hpp"
#include "chbox/quadrature.hpp"

using namespace chbox;

namespace {

void BM_GaussLegendre(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_legendre(n));
}
BENCHMARK(BM_GaussLegendre)->Arg(16)->Arg(40)->Arg(128);

void BM_HylleraasGrid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hylleraas_grid(1.0, {n, n}));
}
BENCHMARK(BM_HylleraasGrid)->Arg(20)->Arg(40);

void BM_AssembleFourTerm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelParams params(1.0);
  const HylleraasBasis basis = preset_basis(PresetKind::FourTerm, 1.0, {0.0, 11.365, 1.393});
  const auto grid = hylleraas_grid(1.0, {n, n});
  for (auto _ : state) benchmark::DoNotOptimize(assemble(basis, params, grid));
}
BENCHMARK(BM_AssembleFourTerm)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_MncEnergy(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mnc_energy(1.0, {0.0, 11.365, 1.393}));
}
BENCHMARK(BM_MncEnergy)->Unit(benchmark::kMillisecond);

void BM_CncGroundState(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cnc_ground_state(1.0, 4, 1.011));
}
BENCHMARK(BM_CncGroundState)->Unit(benchmark::kMillisecond);

void BM_PtGroundState(benchmark::State& state) {
  const ModelParams params(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(pt_ground_state(params));
}
BENCHMARK(BM_PtGroundState)->Unit(benchmark::kMicrosecond);

void BM_BesselZero(benchmark::State& state) {
  int l = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_zero(l, 3));
    l = (l + 1) % kMaxBesselOrder;
  }
}
BENCHMARK(BM_BesselZero);

}  // namespace

BENCHMARK_MAIN();

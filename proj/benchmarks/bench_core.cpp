// Microbenchmarks for the construction pipeline: weight build, basis build,
// the band eigensolver, and the per-level energy integral.

#include <benchmark/benchmark.h>

#include "vansatz/ortho_basis.hpp"
#include "vansatz/potential.hpp"
#include "vansatz/quadrature.hpp"
#include "vansatz/reference_solver.hpp"
#include "vansatz/spectrum.hpp"
#include "vansatz/virial_weight.hpp"

namespace {

vansatz::Potential bench_potential() {
  return vansatz::Potential::quartic_anharmonic(1.0, 1.0, 0.0);
}

void BM_BuildWeight(benchmark::State& state) {
  const auto p = bench_potential();
  const vansatz::QuadratureSpec spec;
  for (auto _ : state) {
    auto w = vansatz::VirialWeight::build(vansatz::GFunction::build(p), spec);
    benchmark::DoNotOptimize(w.normalization());
  }
}
BENCHMARK(BM_BuildWeight);

void BM_BuildBasis(benchmark::State& state) {
  const auto p = bench_potential();
  const vansatz::QuadratureSpec spec;
  const auto w = vansatz::VirialWeight::build(vansatz::GFunction::build(p), spec);
  const int nmax = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto basis = vansatz::OrthoBasis::build(w, nmax, spec);
    benchmark::DoNotOptimize(basis.step(nmax).beta);
  }
}
BENCHMARK(BM_BuildBasis)->Arg(2)->Arg(5)->Arg(8);

void BM_ReferenceSolve(benchmark::State& state) {
  const auto p = bench_potential();
  vansatz::SolverConfig cfg;
  cfg.grid_points = static_cast<int>(state.range(0));
  cfg.half_width = 8.0;
  cfg.richardson = false;
  for (auto _ : state) {
    auto ref = vansatz::solve(p, 5, cfg);
    benchmark::DoNotOptimize(ref.energies().back());
  }
}
BENCHMARK(BM_ReferenceSolve)->Arg(513)->Arg(1025)->Arg(2049);

void BM_EnergyVirial(benchmark::State& state) {
  const auto p = bench_potential();
  const vansatz::QuadratureSpec spec;
  const auto w = vansatz::VirialWeight::build(vansatz::GFunction::build(p), spec);
  const auto basis = vansatz::OrthoBasis::build(w, 5, spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vansatz::energy_virial(basis, 5, spec));
  }
}
BENCHMARK(BM_EnergyVirial);

void BM_TableBlock(benchmark::State& state) {
  const auto p = bench_potential();
  const vansatz::QuadratureSpec spec;
  const vansatz::SolverConfig cfg;
  for (auto _ : state) {
    auto report = vansatz::build_report(p, 5, cfg, spec);
    benchmark::DoNotOptimize(report.rows.back().delta);
  }
}
BENCHMARK(BM_TableBlock)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// Serial reference path against the OpenMP path for the grid kernels.
// Arg 0 selects the path: 0 serial, 1 parallel.
#include <benchmark/benchmark.h>

#include "tomokit/fock_tomography.hpp"
#include "tomokit/spin_tomography.hpp"
#include "tomokit/symplectic_tomography.hpp"

using namespace tomo;

namespace {

Execution path(const benchmark::State& st) { return st.range(0) == 0 ? Execution::serial : Execution::parallel; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) == 0 ? "serial" : "parallel x" + std::to_string(thread_count())); }

void BM_SpinTomogram(benchmark::State& st) {
  const auto j = HalfInteger::parse("5/2");
  const auto rho = random_density_matrix(6, 1);
  const auto quad = SphereQuadrature::make(48, 48);
  for (auto _ : st) benchmark::DoNotOptimize(spin_j_tomogram(rho, j, quad, path(st)));
  label(st);
}

void BM_SpinReconstruct(benchmark::State& st) {
  const auto j = HalfInteger::parse("5/2");
  const auto grid = spin_j_tomogram(random_density_matrix(6, 1), j, SphereQuadrature::make(48, 48));
  for (auto _ : st) benchmark::DoNotOptimize(spin_j_reconstruct(grid, path(st)));
  label(st);
}

void BM_PhotonTomogram(benchmark::State& st) {
  const FockSpace space(32);
  const OperatorMatrix rho(coherent_state(1.0, space) * coherent_state(1.0, space).adjoint());
  const auto grid = PolarGrid::gauss(4.0, 24, 24);
  for (auto _ : st) benchmark::DoNotOptimize(photon_tomogram_grid(rho, space, grid, 32, path(st)));
  label(st);
}

void BM_PhotonReconstruct(benchmark::State& st) {
  const FockSpace space(32);
  const OperatorMatrix rho(coherent_state(1.0, space) * coherent_state(1.0, space).adjoint());
  const auto tom = photon_tomogram_grid(rho, space, PolarGrid::gauss(4.0, 24, 24), 32);
  for (auto _ : st) benchmark::DoNotOptimize(photon_reconstruct(tom, 0.0, 8, path(st)));
  label(st);
}

void BM_SymplecticTomogram(benchmark::State& st) {
  SymplecticLayout layout;
  layout.ygrid = UniformGrid(-8, 8, 64);
  const auto psi = GridWavefunction::oscillator(0, layout.ygrid);
  for (auto _ : st) benchmark::DoNotOptimize(symplectic_tomogram_grid(psi, layout, path(st)));
  label(st);
}

void BM_SymplecticReconstruct(benchmark::State& st) {
  const SymplecticLayout layout;
  const auto tom = symplectic_tomogram_grid(GridWavefunction::oscillator(0, layout.ygrid), layout);
  for (auto _ : st) benchmark::DoNotOptimize(symplectic_reconstruct(tom, path(st)));
  label(st);
}

}  // namespace

BENCHMARK(BM_SpinTomogram)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SpinReconstruct)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PhotonTomogram)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PhotonReconstruct)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SymplecticTomogram)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SymplecticReconstruct)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

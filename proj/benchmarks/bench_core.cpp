#include <benchmark/benchmark.h>

#include "fefkit/applications.hpp"
#include "fefkit/concurrence.hpp"
#include "fefkit/ddim.hpp"
#include "fefkit/fef.hpp"
#include "fefkit/states.hpp"

namespace {

using namespace fefkit;

const DensityMatrix& sample_state() {
  static const DensityMatrix rho = fig2_mixture(42, 0).state;
  return rho;
}

void BM_HermitianEig4(benchmark::State& state) {
  const ComplexMatrix m = sample_state().matrix();
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(m));
}
BENCHMARK(BM_HermitianEig4);

void BM_HermitianEig16(benchmark::State& state) {
  const ComplexMatrix m = kron(sample_state().matrix(), sample_state().matrix());
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(m));
}
BENCHMARK(BM_HermitianEig16);

void BM_RandomDensity(benchmark::State& state) {
  std::uint64_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(random_density(7, k++));
}
BENCHMARK(BM_RandomDensity);

void BM_FullyEntangledFraction(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fully_entangled_fraction(sample_state()));
}
BENCHMARK(BM_FullyEntangledFraction);

void BM_Concurrence(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(concurrence(sample_state()));
}
BENCHMARK(BM_Concurrence);

void BM_SphereOracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fef_oracle_sphere(sample_state()));
}
BENCHMARK(BM_SphereOracle)->Unit(benchmark::kMillisecond);

void BM_UnitaryOracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fef_oracle_unitary(sample_state()));
}
BENCHMARK(BM_UnitaryOracle)->Unit(benchmark::kMillisecond);

void BM_Teleportation(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(teleportation_fidelity(sample_state()));
}
BENCHMARK(BM_Teleportation);

void BM_Swapping(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(swapping_fidelity(sample_state()));
}
BENCHMARK(BM_Swapping);

void BM_BellMaxAngles(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bell_max(sample_state(), BellMode::angles));
}
BENCHMARK(BM_BellMaxAngles)->Unit(benchmark::kMillisecond);

void BM_BellMaxUnitaries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bell_max(sample_state(), BellMode::local_unitaries));
}
BENCHMARK(BM_BellMaxUnitaries)->Unit(benchmark::kMillisecond);

void BM_FefNumericQutrits(benchmark::State& state) {
  const DensityMatrix rho = random_density_d(3, 42, 0);
  for (auto _ : state) benchmark::DoNotOptimize(fef_numeric_d(rho));
}
BENCHMARK(BM_FefNumericQutrits)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

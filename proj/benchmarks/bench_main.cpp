#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <random>

#include "hklab/backend.hpp"
#include "hklab/crossed_product.hpp"
#include "hklab/hermite_model.hpp"
#include "hklab/morphisms.hpp"

using namespace hklab;

namespace {

GridSpec grid_for(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  return GridSpec(static_cast<double>(n) / 32.0, n);
}

void BM_DiracEigendecomposition(benchmark::State& state) {
  const DenseOperator D = dirac_matrix(grid_for(state));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_decomposition(D));
}
BENCHMARK(BM_DiracEigendecomposition)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_FunctionalCalculus(benchmark::State& state) {
  const GridSpec grid = grid_for(state);
  const SpectralData sd = spectral_decomposition(dirac_matrix(grid));
  const ScalarFunction heat = [](double x) { return Complex(std::exp(-x * x)); };
  for (auto _ : state) benchmark::DoNotOptimize(dirac_calculus(sd, grid, heat, 2.0));
}
BENCHMARK(BM_FunctionalCalculus)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_HeatMultiplierRoute(benchmark::State& state) {
  const GridSpec grid = grid_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(heat_multiplier_route(grid, 2.0));
}
BENCHMARK(BM_HeatMultiplierRoute)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_OscillatorSpectrum(benchmark::State& state) {
  const GridSpec grid(32.0, 1024);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(HermiteModel(hermite_basis(m, grid)));
}
BENCHMARK(BM_OscillatorSpectrum)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_OperatorNorm(benchmark::State& state) {
  const GridSpec grid = grid_for(state);
  const DiracCalculus calc(grid);
  const SFunction u = SFunction::gaussian();
  const DenseOperator a = alpha(calc, 1.0, u, CliffFunction::from_components(grid, u, u));
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm(a));
}
BENCHMARK(BM_OperatorNorm)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Convolution(benchmark::State& state) {
  const auto A = std::make_shared<const DihedralAlgebra>(DihedralAlgebra::block_matrices());
  std::mt19937_64 rng(1);
  const int radius = static_cast<int>(state.range(0));
  const auto f = random_element(A, radius, 2 * radius + 1, rng);
  const auto g = random_element(A, radius, 2 * radius + 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(convolve(f, g));
}
BENCHMARK(BM_Convolution)->Arg(3)->Arg(10)->Arg(30);

void BM_ReducedNorm(benchmark::State& state) {
  const auto A = std::make_shared<const DihedralAlgebra>(DihedralAlgebra::scalars());
  const auto hop = GroupAlgebraElement::delta(A, DihedralElement::rho()) +
                   GroupAlgebraElement::delta(A, DihedralElement::rho(-1));
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reduced_norm_estimate(hop, {radius}));
}
BENCHMARK(BM_ReducedNorm)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_BetaDefect(benchmark::State& state) {
  const SFunction u = SFunction::gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(beta_defect(1000.0, u, DihedralElement::rho(), {1.0}));
}
BENCHMARK(BM_BetaDefect)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  reexec_with_working_blas(argv);
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}

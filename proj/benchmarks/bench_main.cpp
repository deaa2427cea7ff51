#include <benchmark/benchmark.h>

#include <random>

#include "schurlab/divdiff.hpp"
#include "schurlab/lowerlab.hpp"
#include "schurlab/matrixnum.hpp"
#include "schurlab/schur.hpp"

using namespace schurlab;
using matrixnum::ComplexMatrix;

namespace {

ComplexMatrix gaussian(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  return a;
}

void BM_SvdJacobi(benchmark::State& st) {
  const auto a = gaussian(static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(matrixnum::svd(a).s.data());
}
BENCHMARK(BM_SvdJacobi)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SvdDivideConquer(benchmark::State& st) {
  const auto a = gaussian(static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(matrixnum::svd_fast(a).s.data());
}
BENCHMARK(BM_SvdDivideConquer)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SvdGram(benchmark::State& st) {
  const auto a = gaussian(static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(matrixnum::svd_gram(a).s.data());
}
BENCHMARK(BM_SvdGram)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ApplyBilinear(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto grid = lowerlab::phi_grid({lowerlab::Variant::B1, 0.5, 40, n});
  const auto a = gaussian(n, 2), b = gaussian(n, 3);
  for (auto _ : st) benchmark::DoNotOptimize(schur::apply_bilinear(grid, a, b).data());
}
BENCHMARK(BM_ApplyBilinear)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_DividedDifference(benchmark::State& st) {
  const auto f = divdiff::sine();
  const double nodes[6] = {0.3, -1.2, 0.3, 2.0, 0.71, -0.4};
  const auto m = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(divdiff::divided_difference(f, std::span<const double>(nodes, m)));
}
BENCHMARK(BM_DividedDifference)->Arg(2)->Arg(4)->Arg(6);

// one restart of the linear ascent
void BM_EstimatorRestart(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto m = schur::tabulate2(schur::m_plus(), schur::PointSet::integers(n));
  schur::EstimateOptions opt;
  opt.budget = {1, 10};
  opt.threads = 1;
  for (auto _ : st) benchmark::DoNotOptimize(schur::norm_lower_estimate(m, 8, 8, opt).ratio);
}
BENCHMARK(BM_EstimatorRestart)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

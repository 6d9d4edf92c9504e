#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fsgrid/eof.hpp"
#include "fsgrid/fisher_shannon.hpp"
#include "fsgrid/grid.hpp"
#include "fsgrid/kde.hpp"
#include "fsgrid/synth.hpp"
#include "fsgrid/windows.hpp"

using namespace fsgrid;

namespace {

std::vector<double> make_samples(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> out(n);
  for (double& v : out) v = dist(rng);
  return out;
}

}  // namespace

static void BM_sj_bandwidth(benchmark::State& state) {
  const auto x = make_samples(static_cast<std::size_t>(state.range(0)), 1);
  const Samples samples(x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sj_bandwidth(samples).value());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_sj_bandwidth)->Arg(200)->Arg(500)->Arg(1000)->Arg(2000)->Arg(5000)
    ->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNSquared);

static void BM_kde_grid(benchmark::State& state) {
  const auto x = make_samples(static_cast<std::size_t>(state.range(0)), 2);
  const Samples samples(x);
  const Bandwidth h = sj_bandwidth(samples);
  const DensityModel model{Samples(x), h};
  const std::size_t m = 4096;
  const double lo = samples.min() - 8.0 * h.value();
  const double dx = (samples.max() + 8.0 * h.value() - lo) / static_cast<double>(m - 1);
  std::vector<double> pdf(m), dpdf(m);
  for (auto _ : state) {
    model.evaluate_grid(lo, dx, m, pdf, dpdf);
    benchmark::DoNotOptimize(pdf.data());
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_kde_grid)->Arg(500)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_fs_point(benchmark::State& state) {
  const auto x = make_samples(static_cast<std::size_t>(state.range(0)), 3);
  const Samples samples(x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fs_point(samples, QuadratureSpec{}).fsc);
  }
}
BENCHMARK(BM_fs_point)->Arg(500)->Arg(1826)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_analyze_series_5y(benchmark::State& state) {
  GeneratorSpec spec;
  spec.seed = 4;
  const TimeAxis axis = TimeAxis::daily(Date(1990, 1, 1),
                                        Date(1990, 1, 1).add_days(state.range(0) * 365 - 1));
  const std::vector<double> series = gen_series(spec, axis);
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze_series(series, axis, WindowSpec{}, QuadratureSpec{}));
  }
}
BENCHMARK(BM_analyze_series_5y)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_eof_decompose(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> dist(0.0, 1.0);
  SpaceTimeMatrix field;
  const Eigen::Index m = state.range(0);
  field.data.resize(m, 792);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index t = 0; t < 792; ++t) field.data(i, t) = dist(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(field).eigenvalues.sum());
  }
}
BENCHMARK(BM_eof_decompose)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

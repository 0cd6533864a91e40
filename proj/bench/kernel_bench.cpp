// Serial reference vs OpenMP kernels on the hot inner loops.
#include <benchmark/benchmark.h>

#include <vector>

#include "ballsep/instances.hpp"
#include "ballsep/kernels.hpp"

using namespace ballsep;

namespace {

BallSet make_instance(int n) { return jittered_grid_n(2, n, 2.5, 42); }

std::vector<DualLine> make_lines(int n) {
  const BallSet balls = make_instance(n);
  std::vector<DualLine> lines;
  lines.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) lines.push_back(dualize_point(balls.point(i), i));
  return lines;
}

void bm_project_serial(benchmark::State& state) {
  const BallSet balls = make_instance(static_cast<int>(state.range(0)));
  const Direction dir = unit_direction({0.6, 0.8});
  std::vector<double> out(static_cast<size_t>(balls.size()));
  for (auto _ : state) {
    kernels::serial::project_points(balls, dir, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_project_omp(benchmark::State& state) {
  const BallSet balls = make_instance(static_cast<int>(state.range(0)));
  const Direction dir = unit_direction({0.6, 0.8});
  std::vector<double> out(static_cast<size_t>(balls.size()));
  for (auto _ : state) {
    kernels::parallel::project_points(balls, dir, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_tube_flags_serial(benchmark::State& state) {
  const auto lines = make_lines(static_cast<int>(state.range(0)));
  const TubeBand band{0.3, 5.0, 0.28, -5.0};
  std::vector<char> flags(lines.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::serial::flag_tube_hits(lines, band, 0.1, 0.9, 1e-9, flags));
  }
}

void bm_tube_flags_omp(benchmark::State& state) {
  const auto lines = make_lines(static_cast<int>(state.range(0)));
  const TubeBand band{0.3, 5.0, 0.28, -5.0};
  std::vector<char> flags(lines.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::parallel::flag_tube_hits(lines, band, 0.1, 0.9, 1e-9, flags));
  }
}

void bm_min_pair_serial(benchmark::State& state) {
  const BallSet balls = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::min_pairwise_distance(balls));
  }
}

void bm_min_pair_omp(benchmark::State& state) {
  const BallSet balls = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::parallel::min_pairwise_distance(balls));
  }
}

void bm_eval_lines_serial(benchmark::State& state) {
  const auto lines = make_lines(static_cast<int>(state.range(0)));
  std::vector<double> out(lines.size());
  for (auto _ : state) {
    kernels::serial::eval_lines_at(lines, 0.37, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_eval_lines_omp(benchmark::State& state) {
  const auto lines = make_lines(static_cast<int>(state.range(0)));
  std::vector<double> out(lines.size());
  for (auto _ : state) {
    kernels::parallel::eval_lines_at(lines, 0.37, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(bm_project_serial)->Arg(4096)->Arg(262144);
BENCHMARK(bm_project_omp)->Arg(4096)->Arg(262144);
BENCHMARK(bm_eval_lines_serial)->Arg(4096)->Arg(262144);
BENCHMARK(bm_eval_lines_omp)->Arg(4096)->Arg(262144);
BENCHMARK(bm_tube_flags_serial)->Arg(4096)->Arg(65536);
BENCHMARK(bm_tube_flags_omp)->Arg(4096)->Arg(65536);
BENCHMARK(bm_min_pair_serial)->Arg(1024)->Arg(4096);
BENCHMARK(bm_min_pair_omp)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();

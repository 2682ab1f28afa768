#include "skewcall/fd_solver.hpp"
#include "skewcall/monte_carlo.hpp"
#include "skewcall/value_function.hpp"
#include "skewcall/vi_verifier.hpp"

#include <benchmark/benchmark.h>

using namespace skewcall;

namespace {

const SkewGbmParams kCaseII{0.1, 0.05, 0.3, 1.0, 1.0, -0.1};
const SkewGbmParams kCaseIII{0.1, 0.05, 0.3, 1.0, 1.6, -0.5};
const SkewGbmParams kCaseIV{0.1, 0.05, 0.3, 1.0, 8.0, 0.3};

void bm_psi(benchmark::State& state) {
    const auto pr = classify(kCaseII);
    const Excessive ex(pr);
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ex.psi(x));
        x = x < 8.0 ? x + 0.1 : 0.5;
    }
}
BENCHMARK(bm_psi);

void bm_alpha(benchmark::State& state) {
    const auto pr = classify(kCaseII);
    const RootConfig cfg = RootConfig::defaults(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(alpha(pr, 1.0, cfg));
}
BENCHMARK(bm_alpha);

void bm_solve_one_sided(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve(kCaseII));
}
BENCHMARK(bm_solve_one_sided);

void bm_solve_point_plus_ray(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve(kCaseIII));
}
BENCHMARK(bm_solve_point_plus_ray);

void bm_solve_two_intervals(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve(kCaseIV));
}
BENCHMARK(bm_solve_two_intervals);

void bm_verify(benchmark::State& state) {
    const auto vf = solve(kCaseIII);
    for (auto _ : state) benchmark::DoNotOptimize(verify(vf));
}
BENCHMARK(bm_verify);

void bm_fd_solve(benchmark::State& state) {
    const auto vf = solve(kCaseII);
    FdConfig cfg = FdConfig::standard(vf, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fd_solve(kCaseII, cfg));
}
BENCHMARK(bm_fd_solve)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void bm_mc_paths(benchmark::State& state) {
    const auto vf = solve(kCaseII);
    McConfig cfg = McConfig::defaults(kCaseII, state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(mc_estimate(kCaseII, vf.region, 3.0, cfg));
}
BENCHMARK(bm_mc_paths)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

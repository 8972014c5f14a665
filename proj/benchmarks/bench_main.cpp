// Microbenchmarks for the hot paths: windowed convolution, one fixed-point
// map application, one explicit evolution step, and a full small wave solve.
#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "pyrofront/numerics.hpp"
#include "pyrofront/pde.hpp"
#include "pyrofront/waves.hpp"

using namespace pyrofront;

namespace {

Field bumpy_field(const Grid1D& grid) {
    return sample(grid, [](double x) {
        return std::sin(3.0 * x) + 0.5 * std::cos(17.0 * x);
    });
}

void bench_convolve_plus(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Grid1D grid{-1.0, 1.0, n};
    const Field field = bumpy_field(grid);
    const Kernel kernel = make_step(10.0, 0.05);
    for (auto _ : state) {
        benchmark::DoNotOptimize(convolve_plus(field, kernel));
    }
    state.SetComplexityN(n);
}

void bench_apply_phi(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    WaveParams params;
    params.omega = 3.0;
    params.kernel = make_step(10.0, 0.05);
    params.grid = wave_grid(0.05, 1.0, n);
    const Field v = bumpy_field(params.grid);
    const Field w = bumpy_field(params.grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_phi(v, w, params));
    }
    state.SetComplexityN(n);
}

void bench_pde_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    ProblemSpec spec;
    spec.mode = DomainMode::interval;
    spec.Theta = 0.3;
    spec.kernel = make_step(1.0, 0.1);
    spec.grid = Grid1D{0.0, 1.0, n};
    spec.boundary = [](double) { return 0.0; };
    spec.initial = sample(spec.grid, [](double x) {
        return std::sin(std::numbers::pi * x);
    });
    spec.dt = 0.4 * spec.cfl_limit();
    for (auto _ : state) {
        benchmark::DoNotOptimize(step(spec.initial, 0.0, spec));
    }
    state.SetComplexityN(n);
}

void bench_wave_solve(benchmark::State& state) {
    WaveParams params;
    params.omega = 3.0;
    params.kernel = make_step(10.0, 0.05);
    params.grid = wave_grid(0.05, 1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(params));
    }
}

BENCHMARK(bench_convolve_plus)->Arg(2001)->Arg(8001)->Arg(20001)->Complexity();
BENCHMARK(bench_apply_phi)->Arg(2001)->Arg(8001)->Arg(20001)->Complexity();
BENCHMARK(bench_pde_step)->Arg(101)->Arg(401)->Arg(1601)->Complexity();
BENCHMARK(bench_wave_solve)->Arg(2001)->Arg(8001);

}  // namespace

BENCHMARK_MAIN();

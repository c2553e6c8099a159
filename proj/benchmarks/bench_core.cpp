#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hnbc/direct_solver.hpp"
#include "hnbc/identity_engine.hpp"
#include "hnbc/spectral_sums.hpp"

namespace {

using hnbc::HerglotzFunction;
using hnbc::Potential;
using hnbc::Problem;

Problem reference_problem(int n_max) {
    Problem p;
    p.q = Potential::constant(1.0);
    p.f = HerglotzFunction(0.0, 1.0);
    p.F = HerglotzFunction(0.0, 0.5);
    p.solver.n_max = n_max;
    return p;
}

void bm_char_function(benchmark::State& state) {
    const Problem p = reference_problem(10);
    double lambda = 2.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hnbc::char_function(p, lambda));
        lambda += 0.7;
        if (lambda > 40.0)
            lambda = 2.5;
    }
}
BENCHMARK(bm_char_function)->Unit(benchmark::kMicrosecond);

void bm_find_eigenvalues(benchmark::State& state) {
    const Problem p = reference_problem(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(hnbc::find_eigenvalues(p));
}
BENCHMARK(bm_find_eigenvalues)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);

void bm_solve_for_omega(benchmark::State& state) {
    const HerglotzFunction f(0.5, -0.3, {{-1.0, 0.4}, {1.5, 0.9}});
    const hnbc::SigmaVector sigma = hnbc::solve_for_sigma(hnbc::omega_vector(f));
    for (auto _ : state)
        benchmark::DoNotOptimize(hnbc::solve_for_omega(sigma));
}
BENCHMARK(bm_solve_for_omega)->Unit(benchmark::kMicrosecond);

void bm_sigma_vector(benchmark::State& state) {
    hnbc::Spectrum sp;
    sp.L = 0.5;
    sp.ind_f = 1;
    sp.ind_F = 0;
    const int count = static_cast<int>(state.range(0));
    for (int n = 0; n < count; ++n) {
        hnbc::SpectralDatum d;
        d.n = n;
        d.lambda = n == 0 ? 0.0 : (n - 0.5) * (n - 0.5) + 0.6 / (n + 1.0);
        d.gamma = hnbc::interval_length / 2.0 + 0.1 / (n + 1.0);
        d.beta = n % 2 == 0 ? 1.0 : -1.0;
        d.chi_prime = d.beta * d.gamma;
        sp.data.push_back(d);
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(hnbc::sigma_vector(sp));
}
BENCHMARK(bm_sigma_vector)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();

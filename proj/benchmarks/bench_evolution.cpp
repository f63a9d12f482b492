#include <benchmark/benchmark.h>

#include <complex>

#include "kho/classical.hpp"
#include "kho/fockspace.hpp"
#include "kho/protocol.hpp"

namespace {

using namespace kho;

void bm_floquet_build(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const QuadratureEigensystem eig = QuadratureEigensystem::compute(n);
    for (auto _ : state) {
        FloquetOperator op = floquet(eig, 0.2, 0.5, nu_tau({}));
        benchmark::DoNotOptimize(op.matrix.data());
    }
}
BENCHMARK(bm_floquet_build)->Arg(100)->Arg(400)->Arg(800);

void bm_quadrature_eigensystem(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        QuadratureEigensystem eig = QuadratureEigensystem::compute(n);
        benchmark::DoNotOptimize(eig.eigenvectors.data());
    }
}
BENCHMARK(bm_quadrature_eigensystem)->Arg(100)->Arg(400)->Arg(800);

void bm_kick_apply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const FloquetOperator op = floquet(0.2, 0.5, nu_tau({}), n);
    FockVector psi = coherent_state(1.0, n).amplitudes;
    psi.normalize();
    for (auto _ : state) {
        psi = op.matrix * psi;
        benchmark::DoNotOptimize(psi.data());
    }
    // Rough guard against the state silently blowing up mid-benchmark.
    if (std::abs(psi.norm() - 1.0) > 1e-6) state.SkipWithError("norm drifted");
}
BENCHMARK(bm_kick_apply)->Arg(100)->Arg(400)->Arg(800);

void bm_classical_steps(benchmark::State& state) {
    const ClassicalMap map = ClassicalMap::from_model({}, 0.2);
    PhasePoint pp{1.0, 0.0};
    for (auto _ : state) {
        pp = step(pp, map);
        benchmark::DoNotOptimize(pp);
    }
}
BENCHMARK(bm_classical_steps);

void bm_q_function(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    FockVector psi = coherent_state(std::complex<double>(0.0, 2.0), n).amplitudes;
    psi.normalize();
    GridSpec spec;
    spec.nx = 64;
    spec.np = 64;
    for (auto _ : state) {
        QGrid grid = q_function(psi, spec, 0.5);
        benchmark::DoNotOptimize(grid.values.data());
    }
}
BENCHMARK(bm_q_function)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();

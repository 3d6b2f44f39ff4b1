#include <benchmark/benchmark.h>

#include <random>

#include "loopchain/householder_frame.hpp"
#include "loopchain/linalg.hpp"
#include "loopchain/propagator.hpp"
#include "loopchain/recipes.hpp"

using namespace loopchain;

namespace {

void BM_PropagateFig5(benchmark::State& state) {
    const auto p = preset("fig5");
    const Basis basis = state.range(0) == 0 ? Basis::Bare : Basis::Householder;
    const HouseholderFrame frame(p.cfg, p.grid);
    const StateVector psi0 =
        basis == Basis::Bare ? p.initial
                             : StateVector(apply_reflection(frame.reflection(p.grid.t_start()), p.initial.amplitudes()),
                                           Basis::Householder);
    for (auto _ : state) benchmark::DoNotOptimize(propagate(p.cfg, psi0, p.grid, basis));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(p.grid.steps()));
}
BENCHMARK(BM_PropagateFig5)->Arg(0)->Arg(1)->ArgNames({"householder"})->Unit(benchmark::kMillisecond);

void BM_SynthesizeChainBreaking(benchmark::State& state) {
    const auto p = preset("fig4");
    for (auto _ : state) benchmark::DoNotOptimize(synthesize_chain_breaking_S(p.cfg, p.grid));
}
BENCHMARK(BM_SynthesizeChainBreaking)->Unit(benchmark::kMillisecond);

void BM_Tridiagonalize(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = u(rng);
        for (std::size_t j = i + 1; j < dim; ++j) {
            m(i, j) = Complex(u(rng), u(rng));
            m(j, i) = std::conj(m(i, j));
        }
    }
    const HermitianMatrix h(m);
    for (auto _ : state) benchmark::DoNotOptimize(tridiagonalize(h));
}
BENCHMARK(BM_Tridiagonalize)->RangeMultiplier(2)->Range(4, 64);

}  // namespace

BENCHMARK_MAIN();

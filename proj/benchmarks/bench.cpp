#include <benchmark/benchmark.h>

#include "mud/algorithms.hpp"
#include "mud/eval.hpp"
#include "mud/rng.hpp"
#include "mud/simulator.hpp"
#include "mud/small_bias.hpp"

namespace {

std::vector<mud::Symbol> make_input(std::size_t n) {
    mud::Rng rng(7);
    std::vector<mud::Symbol> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(mud::Symbol(static_cast<std::int64_t>(rng.below(1u << 20))));
    }
    return out;
}

void BM_SpanBalanced(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto input = make_input(n);
    auto tree = mud::balanced(n);
    auto spec = mud::span_mud();
    for (auto _ : state) {
        benchmark::DoNotOptimize(mud::eval_mud(spec, tree, input));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SpanBalanced)->Arg(1 << 10)->Arg(1 << 15)->Arg(1 << 20);

void BM_SpanParallel(benchmark::State& state) {
    const std::size_t n = 1 << 18;
    auto input = make_input(n);
    auto tree = mud::balanced(n);
    auto spec = mud::span_mud();
    auto workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mud::eval_parallel(spec, tree, input, workers));
    }
}
BENCHMARK(BM_SpanParallel)->Arg(1)->Arg(2)->Arg(4);

void BM_F2Stream(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto input = make_input(n);
    auto spec = mud::f2_sketch_stream(mud::kF2DefaultWidth, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mud::eval_stream(spec, input));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_F2Stream)->Arg(1 << 10)->Arg(1 << 14);

void BM_CompiledMudEval(benchmark::State& state) {
    // sum mod 3 over a random tree: exercises the cached merge path
    mud::TableDFA dfa;
    dfa.n = 6;
    dfa.states = {"s0", "s1", "s2"};
    dfa.alphabet = {"0", "1", "2"};
    dfa.delta = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    dfa.eta = {0, 1, 2};
    auto spec = mud::mud_from_stream(dfa);
    auto tree = mud::random_tree(6, 5);
    std::vector<mud::Symbol> input;
    mud::Rng rng(9);
    for (int i = 0; i < 6; ++i) {
        input.push_back(mud::Symbol(static_cast<std::int64_t>(rng.below(3))));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(mud::eval_mud(spec, tree, input));
    }
}
BENCHMARK(BM_CompiledMudEval);

void BM_SmallBiasBit(benchmark::State& state) {
    auto fam = mud::SmallBiasFamily::create(1 << 16, 0.25, 11);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fam.bit(i));
        i = (i + 197) & ((1 << 16) - 1);
    }
}
BENCHMARK(BM_SmallBiasBit);

void BM_ExactBias(benchmark::State& state) {
    std::vector<std::size_t> subset{0, 2, 3, 5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(mud::exact_bias(6, 8, subset));
    }
}
BENCHMARK(BM_ExactBias);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "lotl/construction.hpp"
#include "lotl/oracle.hpp"
#include "lotl/reach.hpp"
#include "lotl/runs.hpp"

using namespace lotl;

namespace {

// a U (b U (a U ...)), depth-controlled; the compiled automaton has 5^depth
// states, which is what makes this the dominant cost in practice.
formula until_chain(int depth) {
    formula f = formula::atom("a");
    for (int i = 0; i < depth; ++i)
        f = formula::until(formula::atom(i % 2 ? "a" : "b"), f);
    return f;
}

void BM_CompileUntilChain(benchmark::State& state) {
    formula f = until_chain(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(compile(f, {"a", "b"}));
}
BENCHMARK(BM_CompileUntilChain)->DenseRange(1, 4);

void BM_SaturateUntil(benchmark::State& state) {
    transducer a = until_automaton();
    for (auto _ : state) benchmark::DoNotOptimize(saturate(a));
}
BENCHMARK(BM_SaturateUntil);

// The ten-state automaton saturates to about ten thousand items; this is
// the expensive end of what `sat` does on one connective.
void BM_SaturateStavi(benchmark::State& state) {
    transducer a = stavi_until_automaton();
    for (auto _ : state) benchmark::DoNotOptimize(saturate(a));
}
BENCHMARK(BM_SaturateStavi)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_EnumerateRuns(benchmark::State& state) {
    transducer u = until_automaton();
    const alphabet& in = u.input_alphabet();
    finite_word w;
    for (int i = 0; i < state.range(0); ++i) w.push_back(in.at(i % in.size()));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_finite_runs(u, w, 2));
}
BENCHMARK(BM_EnumerateRuns)->RangeMultiplier(2)->Range(4, 64);

void BM_FindRunTerm(benchmark::State& state) {
    transducer a = compile(parse_formula("!a & G !(X a)"), {"a"});
    word_term w = parse_word_term("{a} {}^w {a} {}^w {a}");
    for (auto _ : state) benchmark::DoNotOptimize(find_run_term(a, w));
}
BENCHMARK(BM_FindRunTerm);

void BM_EvalUp(benchmark::State& state) {
    formula f = parse_formula("(a U b) S (b U a)");
    letter e = letter::props({});
    letter a = letter::props({"a"});
    letter b = letter::props({"b"});
    up_word w{{a, b, e}, {a, e, b, b, e}};
    for (auto _ : state) benchmark::DoNotOptimize(eval_up(f, w));
}
BENCHMARK(BM_EvalUp);

void BM_EvalFinite(benchmark::State& state) {
    formula f = parse_formula("(a U b) S (b U a)");
    alphabet sigma = alphabet::power_set({"a", "b"});
    finite_word w;
    for (int i = 0; i < state.range(0); ++i) w.push_back(sigma.at((i * 7 + 3) % sigma.size()));
    for (auto _ : state) benchmark::DoNotOptimize(eval_finite(f, w));
}
BENCHMARK(BM_EvalFinite)->Range(16, 1024);

}  // namespace

BENCHMARK_MAIN();

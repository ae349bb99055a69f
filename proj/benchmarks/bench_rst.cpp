#include <benchmark/benchmark.h>

#include <random>

#include "gct/rst.hpp"

namespace {

gct::DecisionTable make_table(std::size_t objects, std::size_t attrs) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> value(0, 3);
    gct::DecisionTable t;
    for (std::size_t i = 0; i < objects; ++i) {
        std::vector<int> row(attrs);
        for (auto& v : row) v = value(rng);
        t.conditions.push_back(std::move(row));
        t.decisions.push_back(value(rng));
    }
    return t;
}

void BM_ExtractExactRules(benchmark::State& state) {
    const auto t = make_table(static_cast<std::size_t>(state.range(0)), 4);
    const gct::AttrSet attrs = {0, 1, 2, 3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gct::extract_exact_rules(t, attrs));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExtractExactRules)->Range(32, 1024)->Complexity();

void BM_Classify(benchmark::State& state) {
    const auto t = make_table(150, 4);
    const gct::AttrSet attrs = {0, 1, 2, 3};
    const auto rules = gct::extract_exact_rules(t, attrs);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gct::classify(rules, 0.01, t.conditions[i]));
        i = (i + 1) % t.n_objects();
    }
}
BENCHMARK(BM_Classify);

void BM_FindReducts(benchmark::State& state) {
    const auto t = make_table(64, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gct::find_reducts(t, t.n_attrs()));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FindReducts)->DenseRange(4, 12, 4)->Complexity();

}  // namespace

#include <benchmark/benchmark.h>

#include <random>

#include "gct/nfis.hpp"

namespace {

struct Problem {
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
};

Problem make_problem(std::size_t n) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Problem p;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x(4);
        for (auto& v : x) v = unit(rng);
        p.targets.push_back(0.4 * x[0] - 0.2 * x[1] + 0.7 * x[2] * x[3]);
        p.inputs.push_back(std::move(x));
    }
    return p;
}

void BM_Evaluate(benchmark::State& state) {
    const Problem p = make_problem(64);
    gct::TsModel model = gct::init_model(static_cast<std::size_t>(state.range(0)), p.inputs, 1);
    model = gct::fit_consequents_lse(std::move(model), p.inputs, p.targets);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gct::evaluate(model, p.inputs[i]));
        i = (i + 1) % p.inputs.size();
    }
}
BENCHMARK(BM_Evaluate)->Arg(1)->Arg(2)->Arg(4);

void BM_ConsequentLse(benchmark::State& state) {
    const Problem p = make_problem(static_cast<std::size_t>(state.range(0)));
    const gct::TsModel model = gct::init_model(4, p.inputs, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gct::fit_consequents_lse(model, p.inputs, p.targets));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConsequentLse)->Range(16, 256)->Complexity();

void BM_HybridEpoch(benchmark::State& state) {
    const Problem p = make_problem(36);
    const gct::TsModel model = gct::init_model(4, p.inputs, 3);
    gct::NfisTrainConfig cfg;
    cfg.epochs = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gct::train_hybrid(model, p.inputs, p.targets, cfg));
    }
}
BENCHMARK(BM_HybridEpoch);

}  // namespace

#include <benchmark/benchmark.h>

#include "gct/dataset.hpp"
#include "gct/hydrosim.hpp"
#include "gct/som.hpp"

namespace {

const std::vector<std::vector<double>>& training_vectors() {
    static const auto data = [] {
        gct::CycloneSimConfig cfg;
        return gct::to_vectors(gct::normalize(gct::generate(cfg)).first);
    }();
    return data;
}

void BM_SomTrain(benchmark::State& state) {
    const auto& data = training_vectors();
    const auto [rows, cols] = gct::grid_shape(static_cast<std::size_t>(state.range(0)));
    gct::SomTrainConfig cfg;
    cfg.seed = 1;
    for (auto _ : state) {
        gct::SomMap map = gct::init_map(rows, cols, gct::kNumColumns, data, 2);
        map = gct::train(std::move(map), data, cfg);
        benchmark::DoNotOptimize(map.codebook);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SomTrain)->Arg(4)->Arg(9)->Arg(16)->Arg(25)->Arg(36)->Complexity();

void BM_BestMatchingUnit(benchmark::State& state) {
    const auto& data = training_vectors();
    const auto [rows, cols] = gct::grid_shape(static_cast<std::size_t>(state.range(0)));
    gct::SomTrainConfig cfg;
    cfg.seed = 3;
    gct::SomMap map = gct::init_map(rows, cols, gct::kNumColumns, data, 4);
    map = gct::train(std::move(map), data, cfg);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gct::best_matching_unit(map, data[i]));
        i = (i + 1) % data.size();
    }
}
BENCHMARK(BM_BestMatchingUnit)->Arg(9)->Arg(36);

void BM_QuantizationError(benchmark::State& state) {
    const auto& data = training_vectors();
    gct::SomTrainConfig cfg;
    cfg.seed = 5;
    gct::SomMap map = gct::init_map(4, 4, gct::kNumColumns, data, 6);
    map = gct::train(std::move(map), data, cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gct::quantization_error(map, data));
    }
}
BENCHMARK(BM_QuantizationError);

}  // namespace

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gct/dataset.hpp"
#include "gct/nfis.hpp"
#include "gct/som.hpp"

namespace gct {

enum class GrowthMode { Random, Regular };

/// Close-open sweep configuration: SOM granulation feeding TS fuzzy rule
/// training, scored against the held-out test data.
struct SonfisConfig {
    std::size_t iterations_per_rule_count = 10;
    std::size_t max_rules = 4;
    std::size_t min_rules = 1;
    std::pair<std::size_t, std::size_t> neuron_range = {4, 36};
    GrowthMode growth_mode = GrowthMode::Random;
    double error_level = 0.0;  // early stop when rmse <= level; 0 disables
    std::uint64_t seed = 0;
    SomTrainConfig som_train;
    NfisTrainConfig nfis_train;

    void validate() const;
};

struct SonfisTraceEntry {
    std::size_t rule_count = 0;
    std::size_t iteration = 0;
    std::size_t neuron_count = 0;
    double rmse = 0.0;  // percent points, on the real test records
    std::uint64_t seed_used = 0;
    std::size_t eval_points = 0;  // test records scored for this entry
};

struct RunReport {
    std::vector<SonfisTraceEntry> trace;
    std::size_t best = 0;
    std::string best_rules_dump;
    std::optional<SomMap> best_map;  // codebook behind the best entry
    std::uint64_t split_seed = 0;
    std::size_t test_size = 0;
    std::vector<std::string> warnings;
};

RunReport run_sonfis(const Dataset& train, const Dataset& test, const SonfisConfig& cfg);

/// Plain-text report: resolved trace table plus the best entry.
std::string render_sonfis_text(const RunReport& report);

/// Machine-readable trace: rule_count,iteration,neurons,rmse.
std::string render_sonfis_csv(const RunReport& report);

}  // namespace gct

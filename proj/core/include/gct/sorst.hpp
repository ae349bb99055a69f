#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gct/dataset.hpp"
#include "gct/rst.hpp"
#include "gct/som.hpp"

namespace gct {

/// What becomes the objects of the categorized decision table: every
/// training record mapped through its BMU, or the codebook units alone.
enum class GranulateObjects { BmuMap, CodebookOnly };

struct SorstConfig {
    std::size_t n_structures = 7;
    std::pair<std::size_t, std::size_t> neuron_range = {4, 36};
    std::size_t bins_per_attribute = 4;
    std::size_t decision_bins = 4;  // codes 0..3, keeping 4 free as the sentinel
    double strength_init = 0.1;
    double gain = 0.05;
    double target_em = 0.0;
    std::size_t max_adapt_steps = 50;
    std::uint64_t seed = 0;
    SomTrainConfig som_train;
    GranulateObjects granulate_objects = GranulateObjects::BmuMap;

    void validate() const;
};

struct SorstStructureResult {
    std::size_t neuron_count = 0;
    std::size_t rule_count = 0;
    double final_strength = 0.0;
    double final_em = 0.0;
    std::vector<std::pair<double, double>> adapt_trace;  // (threshold used, em) per step
    bool converged = false;
    std::vector<RoughRule> rules;
    std::vector<AttrSet> reducts;        // informational
    std::vector<int> final_predictions;  // per test object, sentinel 4 when unrecognized
    std::uint64_t som_seed_used = 0;     // reproduces the structure's map
};

struct SorstReport {
    std::vector<SorstStructureResult> structures;
    std::size_t best = 0;
    std::string best_rules_dump;
    std::optional<SomMap> best_map;
    std::uint64_t split_seed = 0;
    std::vector<std::string> warnings;
};

/// SOM scaling plus equal-width binning: each record is replaced by its
/// BMU codebook vector, condition coordinates are binned over [0,1] and
/// the decision (denormalized) over [0,100].
DecisionTable categorize(const Dataset& data, const SomMap& map, const NormStats& stats,
                         const SorstConfig& cfg);

SorstReport run_sorst(const Dataset& train, const Dataset& test, const SorstConfig& cfg);

/// Plain-text report table.
std::string render_sorst_text(const SorstReport& report);

/// Machine-readable summary: structure,neurons,rules,final_strength,final_em,converged.
std::string render_sorst_csv(const SorstReport& report);

/// Per-structure adaptation trace: step,strength,em.
std::string render_sorst_trace_csv(const SorstStructureResult& structure);

}  // namespace gct

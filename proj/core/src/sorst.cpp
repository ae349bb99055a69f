#include "gct/sorst.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gct/errors.hpp"
#include "gct/rng.hpp"
#include "gct/textio.hpp"

namespace gct {

void SorstConfig::validate() const {
    if (!(n_structures >= 1))
        throw ValidationError("sorst config: n_structures must be >= 1");
    if (!(neuron_range.first >= 1 && neuron_range.first <= neuron_range.second))
        throw ValidationError("sorst config: need 1 <= neuron min <= neuron max");
    if (!(bins_per_attribute >= 2))
        throw ValidationError("sorst config: bins_per_attribute must be >= 2");
    if (!(decision_bins >= 2 && decision_bins <= 4))
        throw ValidationError(
            "sorst config: decision_bins must be in [2,4] so the sentinel code 4 stays free");
    if (!(strength_init >= 0.0 && strength_init <= 1.0))
        throw ValidationError("sorst config: strength_init must be in [0,1]");
    if (!(gain > 0.0)) throw ValidationError("sorst config: gain must be > 0");
    if (!(max_adapt_steps >= 1))
        throw ValidationError("sorst config: max_adapt_steps must be >= 1");
    som_train.validate();
}

namespace {

int bin_unit_interval(double v, std::size_t bins) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    const auto code = static_cast<int>(std::floor(clamped * static_cast<double>(bins)));
    return std::min(code, static_cast<int>(bins) - 1);  // right-closed last bin
}

int bin_decision_pct(double pct, std::size_t bins) {
    return bin_unit_interval(std::clamp(pct, 0.0, 100.0) / 100.0, bins);
}

std::vector<int> categorize_conditions(const std::vector<double>& codebook_vector,
                                       const SorstConfig& cfg) {
    std::vector<int> codes(kNumConditions);
    for (std::size_t j = 0; j < kNumConditions; ++j)
        codes[j] = bin_unit_interval(codebook_vector[j], cfg.bins_per_attribute);
    return codes;
}

}  // namespace

DecisionTable categorize(const Dataset& data, const SomMap& map, const NormStats& stats,
                         const SorstConfig& cfg) {
    if (data.empty()) throw SizeError("categorize: empty dataset");
    if (map.dim != kNumColumns)
        throw SizeError("categorize: map dimension " + std::to_string(map.dim) +
                        " does not match record width " + std::to_string(kNumColumns));

    DecisionTable table;
    table.conditions.reserve(data.size());
    table.decisions.reserve(data.size());
    const double decision_min = stats.min[kDecisionColumn];
    const double decision_range = stats.max[kDecisionColumn] - decision_min;

    for (const auto& rec : data.records) {
        const auto row = normalize_row(rec.as_array(), stats);
        const std::vector<double> x(row.begin(), row.end());
        const auto& w = map.codebook[best_matching_unit(map, x)];
        table.conditions.push_back(categorize_conditions(w, cfg));
        const double decision_pct =
            decision_range > 0.0 ? w[kDecisionColumn] * decision_range + decision_min
                                 : decision_min;
        table.decisions.push_back(bin_decision_pct(decision_pct, cfg.decision_bins));
    }
    return table;
}

namespace {

// Decision table whose objects are the codebook units themselves.
DecisionTable categorize_codebook(const SomMap& map, const NormStats& stats,
                                  const SorstConfig& cfg) {
    DecisionTable table;
    const double decision_min = stats.min[kDecisionColumn];
    const double decision_range = stats.max[kDecisionColumn] - decision_min;
    for (const auto& w : map.codebook) {
        table.conditions.push_back(categorize_conditions(w, cfg));
        const double decision_pct =
            decision_range > 0.0 ? w[kDecisionColumn] * decision_range + decision_min
                                 : decision_min;
        table.decisions.push_back(bin_decision_pct(decision_pct, cfg.decision_bins));
    }
    return table;
}

}  // namespace

SorstReport run_sorst(const Dataset& train_set, const Dataset& test_set, const SorstConfig& cfg) {
    cfg.validate();
    if (train_set.empty() || test_set.empty())
        throw SizeError("run_sorst: train and test sets must be non-empty");

    const auto [norm_train, stats] = normalize(train_set);
    const auto train_vectors = to_vectors(norm_train);

    AttrSet all_conditions(kNumConditions);
    for (std::size_t a = 0; a < kNumConditions; ++a) all_conditions[a] = a;

    SorstReport report;
    report.structures.reserve(cfg.n_structures);
    std::vector<SomMap> maps;
    maps.reserve(cfg.n_structures);

    for (std::size_t s = 0; s < cfg.n_structures; ++s) {
        const std::uint64_t structure_seed = mix_seed(cfg.seed, s);
        Rng rng(structure_seed);
        std::uniform_int_distribution<std::size_t> pick(cfg.neuron_range.first,
                                                        cfg.neuron_range.second);
        std::size_t neurons = pick(rng);
        if (neurons > train_set.size()) {
            report.warnings.push_back("structure " + std::to_string(s) + ": neuron count " +
                                      std::to_string(neurons) + " clamped to train size " +
                                      std::to_string(train_set.size()));
            neurons = train_set.size();
        }

        const std::string context = "sorst structure " + std::to_string(s) + ": ";
        try {
            const auto [rows, cols] = grid_shape(neurons);
            SomTrainConfig som_cfg = cfg.som_train;
            som_cfg.seed = mix_seed(structure_seed, 1);
            SomMap map = init_map(rows, cols, kNumColumns, train_vectors,
                                  mix_seed(structure_seed, 2));
            map = train(std::move(map), train_vectors, som_cfg);

            const DecisionTable table = cfg.granulate_objects == GranulateObjects::BmuMap
                                            ? categorize(train_set, map, stats, cfg)
                                            : categorize_codebook(map, stats, cfg);
            auto rules = extract_exact_rules(table, all_conditions);

            // Test conditions pass through the same SOM vocabulary; the
            // decision ground truth is the real record's bin.
            std::vector<std::vector<int>> test_conditions;
            std::vector<int> test_actual;
            test_conditions.reserve(test_set.size());
            for (const auto& rec : test_set.records) {
                const auto row = normalize_row(rec.as_array(), stats);
                const std::vector<double> x(row.begin(), row.end());
                const auto& w = map.codebook[best_matching_unit(map, x)];
                test_conditions.push_back(categorize_conditions(w, cfg));
                test_actual.push_back(bin_decision_pct(rec.cum_passing_pct, cfg.decision_bins));
            }

            SorstStructureResult result;
            result.neuron_count = map.units();
            result.rule_count = rules.size();
            result.som_seed_used = structure_seed;
            result.reducts = find_reducts(table, kNumConditions);

            StrengthState state;
            state.s = cfg.strength_init;
            for (std::size_t step = 0; step < cfg.max_adapt_steps; ++step) {
                const double threshold = state.s;
                std::vector<std::optional<int>> predicted;
                predicted.reserve(test_conditions.size());
                for (const auto& x : test_conditions)
                    predicted.push_back(classify(rules, threshold, x));
                const double em_value = em(test_actual, predicted);
                result.adapt_trace.emplace_back(threshold, em_value);
                state = adapt_strength(std::move(state), em_value, cfg.gain, cfg.target_em);
                if (state.converged) break;
            }
            result.final_strength = state.s;
            result.final_em = result.adapt_trace.back().second;
            result.converged = state.converged;
            for (const auto& x : test_conditions) {
                const auto code = classify(rules, result.final_strength, x);
                result.final_predictions.push_back(code.value_or(kUnrecognizedSentinel));
            }
            result.rules = std::move(rules);
            report.structures.push_back(std::move(result));
            maps.push_back(std::move(map));
        } catch (const SizeError& e) {
            throw SizeError(context + e.what());
        } catch (const NumericError& e) {
            throw NumericError(context + e.what());
        } catch (const Error& e) {
            throw Error(context + e.what());
        }
    }

    // Best structure: lowest final EM, then fewest rules, then lowest index.
    std::size_t best = 0;
    for (std::size_t s = 1; s < report.structures.size(); ++s) {
        const auto& cand = report.structures[s];
        const auto& cur = report.structures[best];
        if (cand.final_em < cur.final_em ||
            (cand.final_em == cur.final_em && cand.rule_count < cur.rule_count)) {
            best = s;
        }
    }
    report.best = best;
    if (!report.structures.empty()) {
        report.best_rules_dump = dump_rules(report.structures[best].rules);
        report.best_map = std::move(maps[best]);
    }
    return report;
}

std::string render_sorst_text(const SorstReport& report) {
    std::ostringstream out;
    out << "structure  neurons  rules  final_strength  final_em  converged\n";
    for (std::size_t s = 0; s < report.structures.size(); ++s) {
        const auto& r = report.structures[s];
        out << s << "  " << r.neuron_count << "  " << r.rule_count << "  "
            << fixed(r.final_strength, 6) << "  " << fixed(r.final_em, 6) << "  "
            << (r.converged ? "yes" : "no") << '\n';
    }
    if (!report.structures.empty()) {
        const auto& b = report.structures[report.best];
        out << "best: structure=" << report.best << " neurons=" << b.neuron_count
            << " rules=" << b.rule_count << " final_em=" << fixed(b.final_em, 6) << '\n';
    }
    for (const auto& w : report.warnings) out << "warning: " << w << '\n';
    return out.str();
}

std::string render_sorst_csv(const SorstReport& report) {
    std::ostringstream out;
    out << "structure,neurons,rules,final_strength,final_em,converged\n";
    for (std::size_t s = 0; s < report.structures.size(); ++s) {
        const auto& r = report.structures[s];
        out << s << ',' << r.neuron_count << ',' << r.rule_count << ','
            << fixed(r.final_strength, 6) << ',' << fixed(r.final_em, 6) << ','
            << (r.converged ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string render_sorst_trace_csv(const SorstStructureResult& structure) {
    std::ostringstream out;
    out << "step,strength,em\n";
    for (std::size_t i = 0; i < structure.adapt_trace.size(); ++i) {
        out << (i + 1) << ',' << fixed(structure.adapt_trace[i].first, 6) << ','
            << fixed(structure.adapt_trace[i].second, 6) << '\n';
    }
    return out.str();
}

}  // namespace gct

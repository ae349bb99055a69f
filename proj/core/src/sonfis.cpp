#include "gct/sonfis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gct/errors.hpp"
#include "gct/rng.hpp"
#include "gct/textio.hpp"

namespace gct {

void SonfisConfig::validate() const {
    if (!(min_rules >= 1 && min_rules <= max_rules))
        throw ValidationError("sonfis config: need 1 <= min_rules <= max_rules");
    if (!(iterations_per_rule_count >= 1))
        throw ValidationError("sonfis config: iterations_per_rule_count must be >= 1");
    if (!(neuron_range.first >= 1 && neuron_range.first <= neuron_range.second))
        throw ValidationError("sonfis config: need 1 <= neuron min <= neuron max");
    if (!(error_level >= 0.0))
        throw ValidationError("sonfis config: error_level must be >= 0");
    som_train.validate();
    nfis_train.validate();
}

namespace {

std::size_t pick_neuron_count(const SonfisConfig& cfg, std::size_t iteration, Rng& rng) {
    const auto [lo, hi] = cfg.neuron_range;
    if (cfg.growth_mode == GrowthMode::Random) {
        std::uniform_int_distribution<std::size_t> pick(lo, hi);
        return pick(rng);
    }
    // Regular growth: linear ramp across the range over the iterations.
    if (cfg.iterations_per_rule_count == 1) return lo;
    const double t = static_cast<double>(iteration) /
                     static_cast<double>(cfg.iterations_per_rule_count - 1);
    return lo + static_cast<std::size_t>(std::llround(t * static_cast<double>(hi - lo)));
}

}  // namespace

RunReport run_sonfis(const Dataset& train_set, const Dataset& test_set, const SonfisConfig& cfg) {
    cfg.validate();
    if (train_set.empty() || test_set.empty())
        throw SizeError("run_sonfis: train and test sets must be non-empty");

    const auto [norm_train, stats] = normalize(train_set);
    const auto train_vectors = to_vectors(norm_train);

    RunReport report;
    report.test_size = test_set.size();
    const double decision_min = stats.min[kDecisionColumn];
    const double decision_range = stats.max[kDecisionColumn] - decision_min;

    TsModel best_model;
    SomMap best_map;
    double best_rmse = std::numeric_limits<double>::infinity();
    bool stop = false;

    for (std::size_t r = cfg.min_rules; r <= cfg.max_rules && !stop; ++r) {
        for (std::size_t it = 0; it < cfg.iterations_per_rule_count && !stop; ++it) {
            const std::uint64_t iter_seed = mix_seed(cfg.seed, r, it);
            Rng rng(iter_seed);

            std::size_t neurons = pick_neuron_count(cfg, it, rng);
            if (neurons > train_set.size()) {
                report.warnings.push_back("rule_count " + std::to_string(r) + " iteration " +
                                          std::to_string(it) + ": neuron count " +
                                          std::to_string(neurons) + " clamped to train size " +
                                          std::to_string(train_set.size()));
                neurons = train_set.size();
            }

            const std::string context = "sonfis rule_count " + std::to_string(r) + " iteration " +
                                        std::to_string(it) + ": ";
            try {
                const auto [rows, cols] = grid_shape(neurons);
                SomTrainConfig som_cfg = cfg.som_train;
                som_cfg.seed = mix_seed(iter_seed, 1);
                SomMap map = init_map(rows, cols, kNumColumns, train_vectors,
                                      mix_seed(iter_seed, 2));
                map = train(std::move(map), train_vectors, som_cfg);

                // Closed world: the codebook becomes the reduced training data.
                const Dataset granules = codebook_as_dataset(map, stats);
                std::vector<std::vector<double>> granule_inputs;
                std::vector<double> granule_targets;
                granule_inputs.reserve(granules.size());
                for (const auto& g : granules.records) {
                    const auto row = normalize_row(g.as_array(), stats);
                    granule_inputs.emplace_back(row.begin(), row.begin() + kNumConditions);
                    granule_targets.push_back(row[kDecisionColumn]);
                }

                NfisTrainConfig nfis_cfg = cfg.nfis_train;
                nfis_cfg.seed = mix_seed(iter_seed, 3);
                TsModel model = init_model(r, granule_inputs, nfis_cfg.seed);
                model = train_hybrid(std::move(model), granule_inputs, granule_targets, nfis_cfg);

                // Open world: score against the real test records, in
                // original percent units.
                std::vector<double> predicted, actual;
                predicted.reserve(test_set.size());
                actual.reserve(test_set.size());
                for (const auto& rec : test_set.records) {
                    const auto row = normalize_row(rec.as_array(), stats);
                    const std::vector<double> x(row.begin(), row.begin() + kNumConditions);
                    predicted.push_back(evaluate(model, x) * decision_range + decision_min);
                    actual.push_back(rec.cum_passing_pct);
                }
                const double score = rmse(predicted, actual);

                report.trace.push_back({r, it, map.units(), score, iter_seed, predicted.size()});
                if (score < best_rmse) {
                    best_rmse = score;
                    report.best = report.trace.size() - 1;
                    best_model = std::move(model);
                    best_map = std::move(map);
                }
                if (cfg.error_level > 0.0 && score <= cfg.error_level) stop = true;
            } catch (const SizeError& e) {
                throw SizeError(context + e.what());
            } catch (const NumericError& e) {
                throw NumericError(context + e.what());
            } catch (const Error& e) {
                throw Error(context + e.what());
            }
        }
    }

    if (!report.trace.empty()) {
        report.best_rules_dump = dump_rules(best_model);
        report.best_map = std::move(best_map);
    }
    return report;
}

std::string render_sonfis_text(const RunReport& report) {
    std::ostringstream out;
    out << "rule_count  iteration  neurons  rmse\n";
    for (const auto& e : report.trace) {
        out << e.rule_count << "  " << e.iteration << "  " << e.neuron_count << "  "
            << fixed(e.rmse, 6) << '\n';
    }
    if (!report.trace.empty()) {
        const auto& b = report.trace[report.best];
        out << "best: rule_count=" << b.rule_count << " iteration=" << b.iteration
            << " neurons=" << b.neuron_count << " rmse=" << fixed(b.rmse, 6) << '\n';
    }
    for (const auto& w : report.warnings) out << "warning: " << w << '\n';
    return out.str();
}

std::string render_sonfis_csv(const RunReport& report) {
    std::ostringstream out;
    out << "rule_count,iteration,neurons,rmse\n";
    for (const auto& e : report.trace) {
        out << e.rule_count << ',' << e.iteration << ',' << e.neuron_count << ','
            << fixed(e.rmse, 6) << '\n';
    }
    return out.str();
}

}  // namespace gct

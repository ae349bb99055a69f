// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. The CLI binary path must be passed as argv[1] for the
// end-to-end determinism check.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gct/dataset.hpp"
#include "gct/hydrosim.hpp"
#include "gct/nfis.hpp"
#include "gct/rng.hpp"
#include "gct/rst.hpp"
#include "gct/som.hpp"
#include "gct/sonfis.hpp"
#include "gct/sorst.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

class Criterion {
public:
    Criterion(int number, std::string title, double budget_seconds)
        : number_(number), title_(std::move(title)), budget_(budget_seconds),
          start_(Clock::now()) {}

    void require(bool ok, const std::string& detail) {
        if (!ok && failure_.empty()) failure_ = detail;
    }

    void finish() {
        const double elapsed =
            std::chrono::duration<double>(Clock::now() - start_).count();
        if (elapsed >= budget_ && failure_.empty()) {
            failure_ = "runtime " + std::to_string(elapsed) + "s exceeds budget " +
                       std::to_string(budget_) + "s";
        }
        if (failure_.empty()) {
            std::cout << "[PASS] criterion " << number_ << ": " << title_ << " ("
                      << std::fixed << elapsed << "s)\n";
            std::cout.unsetf(std::ios_base::floatfield);
        } else {
            std::cout << "[FAIL] criterion " << number_ << ": " << title_ << " -- " << failure_
                      << "\n";
            ++g_failures;
        }
    }

private:
    int number_;
    std::string title_;
    double budget_;
    Clock::time_point start_;
    std::string failure_;
};

std::pair<gct::Dataset, gct::Dataset> reference_split() {
    const gct::Dataset all = gct::generate(gct::CycloneSimConfig{});
    return gct::split_train_test(all, 150, 19, 7);
}

void criterion_rmse_formula() {
    Criterion c(1, "RMSE formula matches an independent evaluation", 1.0);
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> value(-50.0, 150.0);
    std::uniform_int_distribution<std::size_t> length(1, 64);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = length(rng);
        std::vector<double> predicted(m), actual(m);
        for (std::size_t i = 0; i < m; ++i) {
            predicted[i] = value(rng);
            actual[i] = value(rng);
        }
        long double sum = 0.0L;
        for (std::size_t i = 0; i < m; ++i) {
            const long double d = static_cast<long double>(predicted[i]) - actual[i];
            sum += d * d;
        }
        const double expected =
            static_cast<double>(std::sqrt(sum / static_cast<long double>(m)));
        const double got = gct::rmse(predicted, actual);
        c.require(std::abs(got - expected) <= 1e-12,
                  "trial " + std::to_string(trial) + ": |" + std::to_string(got) + " - " +
                      std::to_string(expected) + "| > 1e-12");
    }
    c.finish();
}

void criterion_em_formula() {
    Criterion c(2, "EM formula and unit contribution for unrecognized objects", 1.0);
    std::mt19937_64 rng(1002);
    std::uniform_int_distribution<int> code(0, 4);
    std::bernoulli_distribution recognized(0.5);
    std::uniform_int_distribution<std::size_t> length(1, 40);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = length(rng);
        std::vector<int> actual(m);
        std::vector<std::optional<int>> predicted(m);
        for (std::size_t i = 0; i < m; ++i) {
            actual[i] = code(rng);
            if (recognized(rng)) predicted[i] = code(rng);
        }
        const double got = gct::em(actual, predicted);
        const double expected = oracle::em(actual, predicted);
        c.require(std::abs(got - expected) <= 1e-12, "trial " + std::to_string(trial));
    }
    const std::vector<int> actual = {0, 3, 1, 2, 0};
    const std::vector<std::optional<int>> none(actual.size(), std::nullopt);
    c.require(gct::em(actual, none) == 1.0, "all-unrecognized EM must equal 1.0 exactly");
    c.finish();
}

void criterion_rough_set_oracles() {
    Criterion c(3, "rough-set operations match exhaustive enumeration", 30.0);
    std::mt19937_64 rng(1003);
    auto sorted_sets = [](std::vector<gct::AttrSet> sets) {
        std::sort(sets.begin(), sets.end(), [](const gct::AttrSet& a, const gct::AttrSet& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        return sets;
    };

    for (int trial = 0; trial < 200; ++trial) {
        const auto t = oracle::random_table(rng, 8, 4, 3);
        gct::AttrSet all = {0, 1, 2, 3};
        for (int dclass = 0; dclass < 3; ++dclass) {
            gct::AttrSet attrs;
            for (std::size_t a = 0; a <= static_cast<std::size_t>(trial % 4); ++a)
                attrs.push_back(a);
            c.require(gct::lower_approx(t, attrs, dclass) == oracle::lower(t, attrs, dclass),
                      "lower approximation mismatch, trial " + std::to_string(trial));
            c.require(gct::upper_approx(t, attrs, dclass) == oracle::upper(t, attrs, dclass),
                      "upper approximation mismatch, trial " + std::to_string(trial));
        }
        c.require(gct::positive_region(t, all) == oracle::positive_region(t, all),
                  "positive region mismatch, trial " + std::to_string(trial));

        const auto rules = gct::extract_exact_rules(t, all);
        const auto expected = oracle::exact_rules(t, all);
        bool rules_match = rules.size() == expected.size();
        for (std::size_t i = 0; rules_match && i < rules.size(); ++i) {
            rules_match = rules[i].conditions == expected[i].conditions &&
                          rules[i].decision == expected[i].decision &&
                          rules[i].support == expected[i].support;
        }
        c.require(rules_match, "exact rule mismatch, trial " + std::to_string(trial));
    }

    // Reducts against exhaustive minimal-subset search, up to 10 attributes.
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n_attrs = 1 + trial % 10;
        const auto t = oracle::random_table(rng, 8, n_attrs, 3);
        c.require(sorted_sets(gct::find_reducts(t, n_attrs)) == oracle::reducts(t),
                  "reduct mismatch, trial " + std::to_string(trial) + " with " +
                      std::to_string(n_attrs) + " attributes");
    }
    c.finish();
}

void criterion_nfis_gradient() {
    Criterion c(4, "NFIS analytic gradients and LSE recovery", 10.0);
    std::mt19937_64 rng(1004);
    std::uniform_real_distribution<double> center(0.0, 1.0);
    std::uniform_real_distribution<double> width(0.2, 0.6);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> target(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> rule_count(1, 4);

    const double h = 1e-5;
    for (int pair = 0; pair < 100; ++pair) {
        gct::TsModel model;
        model.input_dim = 4;
        const std::size_t n_rules = rule_count(rng);
        for (std::size_t i = 0; i < n_rules; ++i) {
            gct::FuzzyRule rule;
            for (std::size_t j = 0; j < 4; ++j) {
                rule.centers.push_back(center(rng));
                rule.widths.push_back(width(rng));
            }
            for (std::size_t j = 0; j <= 4; ++j) rule.coeffs.push_back(coeff(rng));
            model.rules.push_back(std::move(rule));
        }
        std::vector<std::vector<double>> inputs(1, std::vector<double>(4));
        for (auto& v : inputs[0]) v = center(rng);
        const std::vector<double> targets = {target(rng)};

        auto mse = [&](const gct::TsModel& m) {
            const double d = gct::evaluate(m, inputs[0]) - targets[0];
            return d * d;
        };
        const auto grad = gct::premise_gradient(model, inputs, targets);
        std::size_t k = 0;
        for (std::size_t i = 0; i < n_rules; ++i) {
            for (int which = 0; which < 2; ++which) {
                for (std::size_t j = 0; j < 4; ++j, ++k) {
                    auto& param =
                        which == 0 ? model.rules[i].centers[j] : model.rules[i].widths[j];
                    const double saved = param;
                    param = saved + h;
                    const double up = mse(model);
                    param = saved - h;
                    const double down = mse(model);
                    param = saved;
                    const double fd = (up - down) / (2.0 * h);
                    const double rel = std::abs(grad[k] - fd) /
                                       std::max({std::abs(grad[k]), std::abs(fd), 1e-3});
                    c.require(rel <= 1e-4, "gradient pair " + std::to_string(pair) +
                                               ", parameter " + std::to_string(k));
                }
            }
        }
    }

    // LSE on a noiseless linear target.
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
    for (int i = 0; i < 40; ++i) {
        std::vector<double> x(4);
        for (auto& v : x) v = center(rng);
        targets.push_back(3.0 * x[0] - 2.0);
        inputs.push_back(std::move(x));
    }
    gct::TsModel model = gct::init_model(1, inputs, 7);
    model = gct::fit_consequents_lse(std::move(model), inputs, targets);
    std::vector<double> predicted;
    for (const auto& x : inputs) predicted.push_back(gct::evaluate(model, x));
    c.require(gct::rmse(predicted, targets) <= 1e-6, "LSE failed to recover a linear target");
    c.finish();
}

void criterion_som_properties() {
    Criterion c(5, "SOM convergence, quantization error, BMU minimality", 20.0);

    // Single-unit convergence to the mean.
    const std::vector<std::vector<double>> tiny = {{1.0}, {2.0}, {3.0}};
    gct::SomTrainConfig schedule;
    schedule.epochs = 200;
    schedule.lr_initial = 0.5;
    schedule.lr_final = 0.01;
    schedule.sigma_initial = 1.0;
    schedule.sigma_final = 0.5;
    schedule.seed = 2;
    gct::SomMap single = gct::init_map(1, 1, 1, tiny, 2);
    single = gct::train(std::move(single), tiny, schedule);
    c.require(std::abs(single.codebook[0][0] - 2.0) <= 0.05,
              "single unit ended at " + std::to_string(single.codebook[0][0]));

    // Quantization error across 50 seeds of 150 synthetic records.
    const gct::Dataset all = gct::generate(gct::CycloneSimConfig{});
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const gct::Dataset subset = gct::split_train_test(all, 150, 0, seed).first;
        const auto data = gct::to_vectors(gct::normalize(subset).first);
        const auto [rows, cols] = gct::grid_shape(4 + seed % 33);
        gct::SomTrainConfig cfg;
        cfg.seed = gct::mix_seed(seed, 5);
        gct::SomMap map = gct::init_map(rows, cols, gct::kNumColumns, data,
                                        gct::mix_seed(seed, 6));
        const double before = gct::quantization_error(map, data);
        map = gct::train(std::move(map), data, cfg);
        const double after = gct::quantization_error(map, data);
        c.require(after <= before, "seed " + std::to_string(seed) + ": QE rose from " +
                                       std::to_string(before) + " to " + std::to_string(after));
    }

    // BMU minimality over 10,000 random queries.
    std::mt19937_64 rng(1005);
    std::uniform_real_distribution<double> coord(-0.5, 1.5);
    const auto data = gct::to_vectors(gct::normalize(all).first);
    gct::SomTrainConfig cfg;
    cfg.seed = 77;
    gct::SomMap map = gct::init_map(5, 5, gct::kNumColumns, data, 78);
    map = gct::train(std::move(map), data, cfg);
    for (int q = 0; q < 10000; ++q) {
        std::vector<double> x(gct::kNumColumns);
        for (auto& v : x) v = coord(rng);
        const std::size_t bmu = gct::best_matching_unit(map, x);
        double best = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            best += (x[j] - map.codebook[bmu][j]) * (x[j] - map.codebook[bmu][j]);
        }
        for (const auto& w : map.codebook) {
            double d = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) d += (x[j] - w[j]) * (x[j] - w[j]);
            if (best > d + 1e-15) {
                c.require(false, "query " + std::to_string(q) + " found a closer unit");
                break;
            }
        }
    }
    c.finish();
}

void criterion_sonfis_protocol() {
    Criterion c(6, "close-open sweep shape and mean-predictor bound", 60.0);
    const auto [train_set, test_set] = reference_split();
    gct::SonfisConfig cfg;
    cfg.seed = 11;
    const gct::RunReport report = gct::run_sonfis(train_set, test_set, cfg);

    c.require(report.trace.size() <= 40,
              "trace has " + std::to_string(report.trace.size()) + " entries");
    c.require(report.best < report.trace.size(), "best index out of range");
    for (const auto& e : report.trace) {
        c.require(report.trace[report.best].rmse <= e.rmse, "best entry is not minimal");
        c.require(e.eval_points == test_set.size(), "evaluation did not use all test records");
    }

    double mean = 0.0;
    for (const auto& r : train_set.records) mean += r.cum_passing_pct;
    mean /= static_cast<double>(train_set.size());
    double s = 0.0;
    for (const auto& r : test_set.records) {
        s += (r.cum_passing_pct - mean) * (r.cum_passing_pct - mean);
    }
    const double baseline = std::sqrt(s / static_cast<double>(test_set.size()));
    c.require(report.trace[report.best].rmse <= baseline,
              "best rmse " + std::to_string(report.trace[report.best].rmse) +
                  " exceeds mean-predictor baseline " + std::to_string(baseline));
    c.finish();
}

void criterion_sorst_protocol() {
    Criterion c(7, "adaptive strength protocol shape and rule counts", 60.0);
    const auto [train_set, test_set] = reference_split();
    gct::SorstConfig cfg;
    cfg.seed = 11;
    const gct::SorstReport report = gct::run_sorst(train_set, test_set, cfg);

    c.require(report.structures.size() == 7,
              "expected 7 structures, got " + std::to_string(report.structures.size()));
    bool any_converged = false;
    for (const auto& st : report.structures) {
        any_converged = any_converged || st.converged;
        c.require(st.adapt_trace.size() <= 50, "trace longer than 50 steps");
        for (const auto& [strength, em_value] : st.adapt_trace) {
            c.require(strength >= 0.0 && strength <= 1.0,
                      "strength " + std::to_string(strength) + " left [0,1]");
            (void)em_value;
        }
    }
    c.require(any_converged, "no structure reached the convergence flag");

    // Rule counts against brute-force pure-block counts on rebuilt maps.
    const auto [norm_train, stats] = gct::normalize(train_set);
    const auto train_vectors = gct::to_vectors(norm_train);
    const gct::AttrSet all = {0, 1, 2, 3};
    for (const auto& st : report.structures) {
        const auto [rows, cols] = gct::grid_shape(st.neuron_count);
        gct::SomTrainConfig som_cfg = cfg.som_train;
        som_cfg.seed = gct::mix_seed(st.som_seed_used, 1);
        gct::SomMap map = gct::init_map(rows, cols, gct::kNumColumns, train_vectors,
                                        gct::mix_seed(st.som_seed_used, 2));
        map = gct::train(std::move(map), train_vectors, som_cfg);
        const gct::DecisionTable table = gct::categorize(train_set, map, stats, cfg);
        c.require(st.rule_count == oracle::pure_block_count(table, all),
                  "rule count differs from the pure-block count");
    }
    c.finish();
}

void criterion_hydrosim_closed_forms() {
    Criterion c(8, "partition-curve closed forms and mass conservation", 5.0);
    c.require(std::abs(gct::corrected_partition(40.0, 40.0, 2.0) - 0.5) <= 1e-3,
              "E_c(d50c) is not 0.5 within 1e-3");
    c.require(std::abs(gct::rosin_rammler_passing(60.0, 60.0, 1.1) - 0.63212) <= 1e-3,
              "feed passing at d63 is not 63.212%");

    const gct::PartitionSummary summary = gct::partition_summary(40.0, 2.0);
    c.require(std::abs(summary.imperfection - 0.3851) <= 1e-3,
              "imperfection " + std::to_string(summary.imperfection) + " is off 0.3851");
    auto curve = [](double d) { return gct::corrected_partition(d, 40.0, 2.0); };
    const double d25 = oracle::bisect(curve, 0.25, 1e-6, 400.0);
    const double d50 = oracle::bisect(curve, 0.50, 1e-6, 400.0);
    const double d75 = oracle::bisect(curve, 0.75, 1e-6, 400.0);
    const double oracle_imperfection = (d75 - d25) / (2.0 * d50);
    c.require(std::abs(summary.imperfection - oracle_imperfection) <= 1e-3,
              "imperfection differs from the root-finding oracle");

    gct::CycloneSimConfig sim;
    sim.noise_sd = 0.0;
    for (const auto& [p, phi] : sim.operating_points) {
        const auto masses = gct::partition_masses(sim, p, phi);
        for (std::size_t i = 0; i < masses.feed.size(); ++i) {
            c.require(std::abs(masses.underflow[i] + masses.overflow[i] - masses.feed[i]) <= 1e-9,
                      "mass not conserved in class " + std::to_string(i));
        }
    }
    c.finish();
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

int run_cli(const std::string& command) {
    return std::system(command.c_str());
}

void criterion_end_to_end_determinism(const std::string& cli) {
    Criterion c(9, "byte-identical report CSVs across repeated CLI runs", 120.0);
    if (cli.empty()) {
        c.require(false, "CLI path not supplied (argv[1])");
        c.finish();
        return;
    }
    const fs::path scratch = fs::temp_directory_path() / "gct_acceptance";
    fs::remove_all(scratch);
    fs::create_directories(scratch);
    const std::string data = (scratch / "data.csv").string();
    const std::string quiet = " > /dev/null 2>&1";

    c.require(run_cli(cli + " generate --out " + data + quiet) == 0, "generate failed");
    const std::string data2 = (scratch / "data2.csv").string();
    c.require(run_cli(cli + " generate --out " + data2 + quiet) == 0, "second generate failed");
    c.require(slurp(data) == slurp(data2), "generated datasets differ");

    for (const std::string pipeline : {"sonfis", "sorst"}) {
        const fs::path run1 = scratch / (pipeline + "_run1");
        const fs::path run2 = scratch / (pipeline + "_run2");
        c.require(run_cli(cli + " " + pipeline + " --data " + data + " --out-dir " +
                          run1.string() + quiet) == 0,
                  pipeline + " run 1 failed");
        c.require(run_cli(cli + " " + pipeline + " --data " + data + " --out-dir " +
                          run2.string() + quiet) == 0,
                  pipeline + " run 2 failed");
        for (const auto& entry : fs::directory_iterator(run1)) {
            const auto name = entry.path().filename();
            c.require(slurp(entry.path()) == slurp(run2 / name),
                      pipeline + " file " + name.string() + " differs between runs");
        }
        std::size_t csv_files = 0;
        for (const auto& entry : fs::directory_iterator(run1)) {
            if (entry.path().extension() == ".csv") ++csv_files;
        }
        c.require(csv_files >= 1, pipeline + " produced no CSV report");
    }
    c.finish();
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    criterion_rmse_formula();
    criterion_em_formula();
    criterion_rough_set_oracles();
    criterion_nfis_gradient();
    criterion_som_properties();
    criterion_sonfis_protocol();
    criterion_sorst_protocol();
    criterion_hydrosim_closed_forms();
    criterion_end_to_end_determinism(cli);

    if (g_failures == 0) {
        std::cout << "all acceptance criteria passed\n";
        return 0;
    }
    std::cout << g_failures << " acceptance criteria failed\n";
    return 1;
}

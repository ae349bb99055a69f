#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gct {

/// One first-order Takagi-Sugeno rule: Gaussian premise per input plus a
/// linear consequent (coeffs[0] is the bias).
struct FuzzyRule {
    std::vector<double> centers;
    std::vector<double> widths;
    std::vector<double> coeffs;  // size input_dim + 1
};

struct TsModel {
    std::vector<FuzzyRule> rules;
    std::size_t input_dim = 0;
};

struct NfisTrainConfig {
    std::size_t epochs = 40;
    double learn_rate = 0.05;
    std::uint64_t seed = 0;

    void validate() const;
};

inline constexpr double kInitWidthFloor = 0.05;
inline constexpr double kTrainWidthFloor = 0.01;
inline constexpr double kFiringUnderflow = 1e-300;

/// Rule centers from seeded k-means (25 iterations) over the granule
/// condition vectors; widths are the per-cluster coordinate standard
/// deviations floored at kInitWidthFloor; consequents start at zero.
TsModel init_model(std::size_t n_rules, const std::vector<std::vector<double>>& granules,
                   std::uint64_t seed);

/// Unnormalized rule firing strengths w_i(x) (product of Gaussians).
std::vector<double> firing_strengths(const TsModel& model, const std::vector<double>& x);

/// Weighted-average TS output. Falls back to the nearest-center rule's
/// consequent when the firing sum underflows.
double evaluate(const TsModel& model, const std::vector<double>& x);

/// Least-squares consequent fit with premises frozen, solved by normal
/// equations with 1e-8 ridge damping.
TsModel fit_consequents_lse(TsModel model, const std::vector<std::vector<double>>& inputs,
                            const std::vector<double>& targets);

/// d(MSE)/d(premise params), flattened per rule as centers then widths.
std::vector<double> premise_gradient(const TsModel& model,
                                     const std::vector<std::vector<double>>& inputs,
                                     const std::vector<double>& targets);

/// Hybrid training: per epoch an LSE pass for consequents followed by one
/// gradient step on the premises. Returns the best parameters seen by
/// training RMSE.
TsModel train_hybrid(TsModel model, const std::vector<std::vector<double>>& inputs,
                     const std::vector<double>& targets, const NfisTrainConfig& cfg);

double rmse(const std::vector<double>& predicted, const std::vector<double>& actual);

/// One rule per line:
/// IF p~N(c,s) AND s~N(c,s) AND d~N(c,s) AND f~N(c,s) THEN y = p0 + p1*p + ...
std::string dump_rules(const TsModel& model);

}  // namespace gct

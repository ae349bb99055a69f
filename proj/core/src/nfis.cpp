#include "gct/nfis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "gct/errors.hpp"
#include "gct/rng.hpp"
#include "gct/textio.hpp"

namespace gct {

void NfisTrainConfig::validate() const {
    if (!(learn_rate > 0.0) || !std::isfinite(learn_rate))
        throw ValidationError("nfis config: learn_rate must be finite and positive");
}

namespace {

constexpr double kRidge = 1e-8;
constexpr std::size_t kMeansIterations = 25;

void check_input(const TsModel& model, const std::vector<double>& x) {
    if (model.rules.empty()) throw SizeError("nfis: model has no rules");
    if (x.size() != model.input_dim)
        throw SizeError("nfis: input dimension " + std::to_string(x.size()) +
                        " does not match model dimension " + std::to_string(model.input_dim));
}

double consequent_value(const FuzzyRule& rule, const std::vector<double>& x) {
    double y = rule.coeffs[0];
    for (std::size_t j = 0; j < x.size(); ++j) y += rule.coeffs[j + 1] * x[j];
    return y;
}

std::size_t nearest_center(const TsModel& model, const std::vector<double>& x) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < model.rules.size(); ++i) {
        double d = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double t = x[j] - model.rules[i].centers[j];
            d += t * t;
        }
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

// Gaussian elimination with partial pivoting; throws NumericError when the
// system is singular even with the ridge term in place.
std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (!(std::abs(a[pivot][col]) > 0.0) || !std::isfinite(a[pivot][col]))
            throw NumericError("consequent system is singular despite ridge damping");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t ri = n; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) s -= a[ri][c] * x[c];
        x[ri] = s / a[ri][ri];
        if (!std::isfinite(x[ri]))
            throw NumericError("consequent solution is not finite");
    }
    return x;
}

// Normalized firing strengths, with the same nearest-center fallback the
// evaluator uses when the sum underflows.
std::vector<double> normalized_strengths(const TsModel& model, const std::vector<double>& x) {
    auto w = firing_strengths(model, x);
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (sum < kFiringUnderflow) {
        std::fill(w.begin(), w.end(), 0.0);
        w[nearest_center(model, x)] = 1.0;
        return w;
    }
    for (double& v : w) v /= sum;
    return w;
}

}  // namespace

TsModel init_model(std::size_t n_rules, const std::vector<std::vector<double>>& granules,
                   std::uint64_t seed) {
    if (n_rules == 0) throw SizeError("init_model: need at least one rule");
    if (granules.empty()) throw SizeError("init_model: empty granule set");
    if (n_rules > granules.size())
        throw SizeError("init_model: " + std::to_string(n_rules) + " rules exceed " +
                        std::to_string(granules.size()) + " granules");
    const std::size_t dim = granules.front().size();
    for (const auto& g : granules) {
        if (g.size() != dim) throw SizeError("init_model: inconsistent granule dimensions");
    }

    // Seeded k-means: initial centers are distinct sampled granules.
    std::vector<std::size_t> idx(granules.size());
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<std::vector<double>> centers;
    centers.reserve(n_rules);
    for (std::size_t i = 0; i < n_rules; ++i) centers.push_back(granules[idx[i]]);

    std::vector<std::size_t> assign(granules.size(), 0);
    for (std::size_t iter = 0; iter < kMeansIterations; ++iter) {
        for (std::size_t g = 0; g < granules.size(); ++g) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < n_rules; ++c) {
                double d = 0.0;
                for (std::size_t j = 0; j < dim; ++j) {
                    const double t = granules[g][j] - centers[c][j];
                    d += t * t;
                }
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            assign[g] = best;
        }
        for (std::size_t c = 0; c < n_rules; ++c) {
            std::vector<double> mean(dim, 0.0);
            std::size_t count = 0;
            for (std::size_t g = 0; g < granules.size(); ++g) {
                if (assign[g] != c) continue;
                ++count;
                for (std::size_t j = 0; j < dim; ++j) mean[j] += granules[g][j];
            }
            if (count == 0) continue;  // empty cluster keeps its previous center
            for (std::size_t j = 0; j < dim; ++j) centers[c][j] = mean[j] / count;
        }
    }

    TsModel model;
    model.input_dim = dim;
    model.rules.resize(n_rules);
    for (std::size_t c = 0; c < n_rules; ++c) {
        auto& rule = model.rules[c];
        rule.centers = centers[c];
        rule.widths.assign(dim, 0.0);
        rule.coeffs.assign(dim + 1, 0.0);
        std::size_t count = 0;
        for (std::size_t g = 0; g < granules.size(); ++g) {
            if (assign[g] != c) continue;
            ++count;
            for (std::size_t j = 0; j < dim; ++j) {
                const double t = granules[g][j] - centers[c][j];
                rule.widths[j] += t * t;
            }
        }
        for (std::size_t j = 0; j < dim; ++j) {
            const double sd = count > 0 ? std::sqrt(rule.widths[j] / count) : 0.0;
            rule.widths[j] = std::max(sd, kInitWidthFloor);
        }
    }
    return model;
}

std::vector<double> firing_strengths(const TsModel& model, const std::vector<double>& x) {
    check_input(model, x);
    std::vector<double> w(model.rules.size());
    for (std::size_t i = 0; i < model.rules.size(); ++i) {
        const auto& rule = model.rules[i];
        double exponent = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double z = (x[j] - rule.centers[j]) / rule.widths[j];
            exponent += z * z;
        }
        w[i] = std::exp(-0.5 * exponent);
    }
    return w;
}

double evaluate(const TsModel& model, const std::vector<double>& x) {
    const auto w = firing_strengths(model, x);
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (sum < kFiringUnderflow) {
        return consequent_value(model.rules[nearest_center(model, x)], x);
    }
    double out = 0.0;
    for (std::size_t i = 0; i < model.rules.size(); ++i) {
        out += w[i] * consequent_value(model.rules[i], x);
    }
    return out / sum;
}

TsModel fit_consequents_lse(TsModel model, const std::vector<std::vector<double>>& inputs,
                            const std::vector<double>& targets) {
    if (inputs.empty() || inputs.size() != targets.size())
        throw SizeError("fit_consequents_lse: need matching non-empty inputs and targets");
    const std::size_t n_rules = model.rules.size();
    const std::size_t width = model.input_dim + 1;
    const std::size_t n_params = n_rules * width;

    // Normal equations over the regressor phi(x) = [wbar_i * (1, x)]_i.
    std::vector<std::vector<double>> ata(n_params, std::vector<double>(n_params, 0.0));
    std::vector<double> atb(n_params, 0.0);
    std::vector<double> phi(n_params);
    for (std::size_t t = 0; t < inputs.size(); ++t) {
        const auto& x = inputs[t];
        const auto wbar = normalized_strengths(model, x);
        for (std::size_t i = 0; i < n_rules; ++i) {
            phi[i * width] = wbar[i];
            for (std::size_t j = 0; j < model.input_dim; ++j)
                phi[i * width + j + 1] = wbar[i] * x[j];
        }
        for (std::size_t a = 0; a < n_params; ++a) {
            atb[a] += phi[a] * targets[t];
            for (std::size_t b = a; b < n_params; ++b) ata[a][b] += phi[a] * phi[b];
        }
    }
    for (std::size_t a = 0; a < n_params; ++a) {
        ata[a][a] += kRidge;
        for (std::size_t b = 0; b < a; ++b) ata[a][b] = ata[b][a];
    }

    const auto solution = solve_linear(std::move(ata), std::move(atb));
    for (std::size_t i = 0; i < n_rules; ++i) {
        for (std::size_t j = 0; j < width; ++j) model.rules[i].coeffs[j] = solution[i * width + j];
    }
    return model;
}

std::vector<double> premise_gradient(const TsModel& model,
                                     const std::vector<std::vector<double>>& inputs,
                                     const std::vector<double>& targets) {
    if (inputs.empty() || inputs.size() != targets.size())
        throw SizeError("premise_gradient: need matching non-empty inputs and targets");
    const std::size_t dim = model.input_dim;
    std::vector<double> grad(model.rules.size() * 2 * dim, 0.0);
    const double scale = 2.0 / static_cast<double>(inputs.size());

    for (std::size_t t = 0; t < inputs.size(); ++t) {
        const auto& x = inputs[t];
        const auto w = firing_strengths(model, x);
        const double sum = std::accumulate(w.begin(), w.end(), 0.0);
        if (sum < kFiringUnderflow) continue;  // fallback region is piecewise constant
        double f = 0.0;
        for (std::size_t i = 0; i < model.rules.size(); ++i)
            f += w[i] * consequent_value(model.rules[i], x);
        f /= sum;
        const double residual = f - targets[t];

        for (std::size_t i = 0; i < model.rules.size(); ++i) {
            const auto& rule = model.rules[i];
            // df/dw_i = (g_i - f) / sum
            const double df_dw = (consequent_value(rule, x) - f) / sum;
            const double common = residual * df_dw * w[i];
            for (std::size_t j = 0; j < dim; ++j) {
                const double diff = x[j] - rule.centers[j];
                const double s = rule.widths[j];
                grad[(i * 2) * dim + j] += scale * common * diff / (s * s);
                grad[(i * 2 + 1) * dim + j] += scale * common * diff * diff / (s * s * s);
            }
        }
    }
    return grad;
}

namespace {

double mse(const TsModel& model, const std::vector<std::vector<double>>& inputs,
           const std::vector<double>& targets) {
    double s = 0.0;
    for (std::size_t t = 0; t < inputs.size(); ++t) {
        const double d = evaluate(model, inputs[t]) - targets[t];
        s += d * d;
    }
    return s / static_cast<double>(inputs.size());
}

}  // namespace

TsModel train_hybrid(TsModel model, const std::vector<std::vector<double>>& inputs,
                     const std::vector<double>& targets, const NfisTrainConfig& cfg) {
    cfg.validate();
    if (inputs.empty() || inputs.size() != targets.size())
        throw SizeError("train_hybrid: need matching non-empty inputs and targets");
    if (cfg.epochs == 0) return model;

    TsModel best;
    double best_rmse = std::numeric_limits<double>::infinity();
    const std::size_t dim = model.input_dim;

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        model = fit_consequents_lse(std::move(model), inputs, targets);
        const double epoch_rmse = std::sqrt(mse(model, inputs, targets));
        if (epoch_rmse < best_rmse) {
            best_rmse = epoch_rmse;
            best = model;
        }

        const auto grad = premise_gradient(model, inputs, targets);
        for (std::size_t i = 0; i < model.rules.size(); ++i) {
            auto& rule = model.rules[i];
            for (std::size_t j = 0; j < dim; ++j) {
                const double gc = grad[(i * 2) * dim + j];
                const double gs = grad[(i * 2 + 1) * dim + j];
                if (!std::isfinite(gc))
                    throw NumericError("non-finite gradient for rule " + std::to_string(i) +
                                       " center[" + std::to_string(j) + "]");
                if (!std::isfinite(gs))
                    throw NumericError("non-finite gradient for rule " + std::to_string(i) +
                                       " width[" + std::to_string(j) + "]");
                rule.centers[j] -= cfg.learn_rate * gc;
                rule.widths[j] = std::max(rule.widths[j] - cfg.learn_rate * gs, kTrainWidthFloor);
            }
        }
    }
    return best;
}

double rmse(const std::vector<double>& predicted, const std::vector<double>& actual) {
    if (predicted.empty() || predicted.size() != actual.size())
        throw SizeError("rmse: need matching non-empty vectors");
    double s = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double d = predicted[i] - actual[i];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(predicted.size()));
}

std::string dump_rules(const TsModel& model) {
    static const char* var_names[] = {"p", "s", "d", "f"};
    std::ostringstream out;
    for (const auto& rule : model.rules) {
        out << "IF ";
        for (std::size_t j = 0; j < model.input_dim; ++j) {
            if (j > 0) out << " AND ";
            const char* name = j < 4 ? var_names[j] : "x";
            out << name << "~N(" << fixed(rule.centers[j], 6) << "," << fixed(rule.widths[j], 6)
                << ")";
        }
        out << " THEN y = " << fixed(rule.coeffs[0], 6);
        for (std::size_t j = 0; j < model.input_dim; ++j) {
            const char* name = j < 4 ? var_names[j] : "x";
            out << " + " << fixed(rule.coeffs[j + 1], 6) << "·" << name;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace gct

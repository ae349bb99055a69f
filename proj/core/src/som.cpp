#include "gct/som.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "gct/errors.hpp"
#include "gct/rng.hpp"
#include "gct/textio.hpp"

namespace gct {

void SomTrainConfig::validate() const {
    if (!(lr_initial >= lr_final && lr_final > 0.0 && lr_initial <= 1.0))
        throw ValidationError("som config: need 1 >= lr_initial >= lr_final > 0");
    if (!(sigma_initial >= sigma_final && sigma_final > 0.0))
        throw ValidationError("som config: need sigma_initial >= sigma_final > 0");
}

std::pair<std::size_t, std::size_t> grid_shape(std::size_t n_units) {
    if (n_units == 0) throw SizeError("grid_shape: zero units");
    const auto rows = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n_units))));
    const std::size_t cols = (n_units + rows - 1) / rows;
    return {rows, cols};
}

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void check_dims(const SomMap& map, const std::vector<std::vector<double>>& data) {
    for (const auto& x : data) {
        if (x.size() != map.dim)
            throw SizeError("som: sample dimension " + std::to_string(x.size()) +
                            " does not match map dimension " + std::to_string(map.dim));
    }
}

}  // namespace

SomMap init_map(std::size_t rows, std::size_t cols, std::size_t dim,
                const std::vector<std::vector<double>>& data, std::uint64_t seed) {
    if (rows == 0 || cols == 0 || dim == 0) throw SizeError("init_map: zero dimension");
    if (data.empty()) throw SizeError("init_map: empty data");
    SomMap map;
    map.rows = rows;
    map.cols = cols;
    map.dim = dim;
    check_dims(map, data);
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
    map.codebook.reserve(rows * cols);
    for (std::size_t u = 0; u < rows * cols; ++u) map.codebook.push_back(data[pick(rng)]);
    return map;
}

std::size_t best_matching_unit(const SomMap& map, const std::vector<double>& x) {
    if (x.size() != map.dim)
        throw SizeError("best_matching_unit: query dimension " + std::to_string(x.size()) +
                        " does not match map dimension " + std::to_string(map.dim));
    std::size_t best = 0;
    double best_d = squared_distance(map.codebook[0], x);
    for (std::size_t u = 1; u < map.codebook.size(); ++u) {
        const double d = squared_distance(map.codebook[u], x);
        if (d < best_d) {
            best = u;
            best_d = d;
        }
    }
    return best;
}

SomMap train(SomMap map, const std::vector<std::vector<double>>& data,
             const SomTrainConfig& cfg) {
    cfg.validate();
    if (data.empty()) throw SizeError("train: empty data");
    check_dims(map, data);
    if (cfg.epochs == 0) return map;

    Rng rng(cfg.seed);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double progress =
            cfg.epochs > 1 ? static_cast<double>(epoch) / static_cast<double>(cfg.epochs - 1) : 1.0;
        const double lr = cfg.lr_initial * std::pow(cfg.lr_final / cfg.lr_initial, progress);
        const double sigma =
            cfg.sigma_initial * std::pow(cfg.sigma_final / cfg.sigma_initial, progress);
        const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);

        std::shuffle(order.begin(), order.end(), rng);
        for (const std::size_t sample : order) {
            const auto& x = data[sample];
            const std::size_t bmu = best_matching_unit(map, x);
            const double br = static_cast<double>(bmu / map.cols);
            const double bc = static_cast<double>(bmu % map.cols);
            for (std::size_t u = 0; u < map.codebook.size(); ++u) {
                const double dr = static_cast<double>(u / map.cols) - br;
                const double dc = static_cast<double>(u % map.cols) - bc;
                const double h = std::exp(-(dr * dr + dc * dc) * inv_two_sigma2);
                const double a = lr * h;
                auto& w = map.codebook[u];
                for (std::size_t j = 0; j < map.dim; ++j) w[j] += a * (x[j] - w[j]);
            }
        }
    }
    return map;
}

double quantization_error(const SomMap& map, const std::vector<std::vector<double>>& data) {
    if (data.empty()) throw SizeError("quantization_error: empty data");
    check_dims(map, data);
    double total = 0.0;
    for (const auto& x : data) {
        total += std::sqrt(squared_distance(map.codebook[best_matching_unit(map, x)], x));
    }
    return total / static_cast<double>(data.size());
}

Dataset codebook_as_dataset(const SomMap& map, const NormStats& stats) {
    if (map.dim != kNumColumns)
        throw SizeError("codebook_as_dataset: map dimension " + std::to_string(map.dim) +
                        " does not match record width " + std::to_string(kNumColumns));
    Dataset out;
    out.records.reserve(map.units());
    for (const auto& w : map.codebook) {
        std::array<double, kNumColumns> norm{};
        std::copy(w.begin(), w.end(), norm.begin());
        const auto raw = denormalize_row(norm, stats);
        DataRecord r;
        r.pressure_psi = raw[0];
        r.solids_pct = std::clamp(raw[1], 0.0, 100.0);
        r.size_um = raw[2];
        r.stream_flag = static_cast<int>(std::lround(std::clamp(raw[3], 0.0, 1.0)));
        r.cum_passing_pct = std::clamp(raw[4], 0.0, 100.0);
        out.records.push_back(r);
    }
    return out;
}

void write_codebook_csv(const SomMap& map, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    out << "unit,row,col";
    for (std::size_t j = 0; j < map.dim; ++j) out << ",c" << j;
    out << '\n';
    for (std::size_t u = 0; u < map.codebook.size(); ++u) {
        out << u << ',' << u / map.cols << ',' << u % map.cols;
        for (double v : map.codebook[u]) out << ',' << compact(v);
        out << '\n';
    }
}

}  // namespace gct

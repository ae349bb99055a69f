#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gct/dataset.hpp"

namespace gct {

/// Rectangular self-organizing map; the codebook vectors are the crisp
/// granules of the first granulation stage.
struct SomMap {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t dim = 0;
    std::vector<std::vector<double>> codebook;  // row-major, rows*cols entries

    std::size_t units() const { return rows * cols; }
};

struct SomTrainConfig {
    std::size_t epochs = 50;
    double lr_initial = 0.5;
    double lr_final = 0.05;
    double sigma_initial = 2.0;   // grid-distance units
    double sigma_final = 0.5;
    std::uint64_t seed = 0;

    void validate() const;
};

/// rows = floor(sqrt(n)), cols = ceil(n/rows); covers at least n units.
std::pair<std::size_t, std::size_t> grid_shape(std::size_t n_units);

/// Codebook seeded by uniform sampling of data points.
SomMap init_map(std::size_t rows, std::size_t cols, std::size_t dim,
                const std::vector<std::vector<double>>& data, std::uint64_t seed);

/// Index of the nearest codebook vector; ties go to the lowest row-major
/// index.
std::size_t best_matching_unit(const SomMap& map, const std::vector<double>& x);

/// Online training: per sample, every unit moves toward the sample by
/// lr * h(grid distance to BMU) with a Gaussian neighborhood of width
/// sigma. lr and sigma decay exponentially from initial to final across
/// epochs; sample order is reshuffled per epoch from the seed.
SomMap train(SomMap map, const std::vector<std::vector<double>>& data,
             const SomTrainConfig& cfg);

/// Mean Euclidean distance from each sample to its BMU.
double quantization_error(const SomMap& map, const std::vector<std::vector<double>>& data);

/// Denormalizes each codebook vector into a DataRecord; the stream
/// component rounds to {0,1} and percent fields clamp to [0,100].
Dataset codebook_as_dataset(const SomMap& map, const NormStats& stats);

/// Inspection dump: `unit,row,col,c0,...` one line per unit.
void write_codebook_csv(const SomMap& map, const std::string& path);

}  // namespace gct

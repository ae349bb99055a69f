#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gct {

inline constexpr std::size_t kNumColumns = 5;
inline constexpr std::size_t kNumConditions = 4;
inline constexpr std::size_t kDecisionColumn = 4;

/// Column order of the on-disk CSV schema.
extern const std::array<const char*, kNumColumns> kColumnNames;

/// One hydrocyclone observation: four condition attributes plus the
/// cumulative passing percent decision.
struct DataRecord {
    double pressure_psi = 0.0;
    double solids_pct = 0.0;
    double size_um = 0.0;
    int stream_flag = 0;  // 0 = overflow, 1 = underflow
    double cum_passing_pct = 0.0;

    std::array<double, kNumColumns> as_array() const {
        return {pressure_psi, solids_pct, size_um,
                static_cast<double>(stream_flag), cum_passing_pct};
    }
};

struct Dataset {
    std::vector<DataRecord> records;

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
};

/// Per-column min/max captured by normalize(), used to invert the map.
struct NormStats {
    std::array<double, kNumColumns> min{};
    std::array<double, kNumColumns> max{};
};

/// Throws ValidationError if the record violates a field invariant.
/// row_index (1-based data row) is included in the message when nonzero.
void validate_record(const DataRecord& r, std::size_t row_index = 0);

Dataset load_csv(const std::string& path);
void write_csv(const Dataset& d, const std::string& path);

/// Seeded-shuffle split into disjoint (train, test) subsets. With
/// stratify_by_stream, sizes are allocated per stream_flag stratum by
/// largest remainder before shuffling within each stratum.
std::pair<Dataset, Dataset> split_train_test(const Dataset& d,
                                             std::size_t n_train,
                                             std::size_t n_test,
                                             std::uint64_t seed,
                                             bool stratify_by_stream = false);

/// Min-max scales every column to [0,1]; a constant column maps to 0.
std::pair<Dataset, NormStats> normalize(const Dataset& d);

/// Inverse of normalize() for the given stats.
Dataset denormalize(const Dataset& d, const NormStats& stats);

std::array<double, kNumColumns> normalize_row(const std::array<double, kNumColumns>& row,
                                              const NormStats& stats);
std::array<double, kNumColumns> denormalize_row(const std::array<double, kNumColumns>& row,
                                                const NormStats& stats);

/// Records as 5-component vectors (normalized or raw, as given).
std::vector<std::vector<double>> to_vectors(const Dataset& d);

}  // namespace gct

#include "gct/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "gct/errors.hpp"
#include "gct/rng.hpp"
#include "gct/textio.hpp"

namespace gct {

const std::array<const char*, kNumColumns> kColumnNames = {
    "pressure_psi", "solids_pct", "size_um", "stream_flag", "cum_passing_pct"};

void validate_record(const DataRecord& r, std::size_t row_index) {
    auto fail = [&](const std::string& msg) {
        std::string where = row_index ? ("row " + std::to_string(row_index) + ": ") : std::string();
        throw ValidationError(where + msg);
    };
    const auto vals = r.as_array();
    for (std::size_t c = 0; c < kNumColumns; ++c) {
        if (!std::isfinite(vals[c])) fail(std::string(kColumnNames[c]) + " is not finite");
    }
    if (r.pressure_psi <= 0.0) fail("pressure_psi must be > 0");
    if (r.solids_pct < 0.0 || r.solids_pct > 100.0) fail("solids_pct must be in [0,100]");
    if (r.size_um <= 0.0) fail("size_um must be > 0");
    if (r.stream_flag != 0 && r.stream_flag != 1) fail("stream_flag must be 0 or 1");
    if (r.cum_passing_pct < 0.0 || r.cum_passing_pct > 100.0)
        fail("cum_passing_pct must be in [0,100]");
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    double v = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
        throw ParseError("row " + std::to_string(row) + ": cannot parse '" + cell +
                         "' in column " + kColumnNames[col]);
    }
    return v;
}

void check_header(const std::string& header_line) {
    const auto fields = split_fields(header_line);
    const std::size_t n = std::min(fields.size(), kNumColumns);
    for (std::size_t c = 0; c < n; ++c) {
        if (fields[c] != kColumnNames[c]) {
            throw SchemaError("header mismatch: expected column '" +
                              std::string(kColumnNames[c]) + "', found '" + fields[c] + "'");
        }
    }
    if (fields.size() < kNumColumns) {
        throw SchemaError("missing column '" + std::string(kColumnNames[fields.size()]) + "'");
    }
    if (fields.size() > kNumColumns) {
        throw SchemaError("unexpected extra column '" + fields[kNumColumns] + "'");
    }
}

}  // namespace

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw SchemaError("empty file: " + path);
    check_header(line);

    Dataset d;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++row;
        const auto fields = split_fields(line);
        if (fields.size() != kNumColumns) {
            throw ParseError("row " + std::to_string(row) + ": expected " +
                             std::to_string(kNumColumns) + " fields, found " +
                             std::to_string(fields.size()));
        }
        DataRecord r;
        r.pressure_psi = parse_cell(fields[0], row, 0);
        r.solids_pct = parse_cell(fields[1], row, 1);
        r.size_um = parse_cell(fields[2], row, 2);
        const double flag = parse_cell(fields[3], row, 3);
        if (flag != std::floor(flag)) {
            throw ParseError("row " + std::to_string(row) + ": stream_flag must be an integer");
        }
        r.stream_flag = static_cast<int>(flag);
        r.cum_passing_pct = parse_cell(fields[4], row, 4);
        validate_record(r, row);
        d.records.push_back(r);
    }
    return d;
}

void write_csv(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    for (std::size_t c = 0; c < kNumColumns; ++c) {
        out << kColumnNames[c] << (c + 1 < kNumColumns ? "," : "\n");
    }
    for (const auto& r : d.records) {
        out << compact(r.pressure_psi) << ',' << compact(r.solids_pct) << ','
            << compact(r.size_um) << ',' << r.stream_flag << ','
            << compact(r.cum_passing_pct) << '\n';
    }
}

namespace {

// Largest-remainder allocation of `total` across strata proportional to
// their sizes, never exceeding a stratum's remaining capacity.
std::vector<std::size_t> allocate_proportional(const std::vector<std::size_t>& capacity,
                                               const std::vector<std::size_t>& already_taken,
                                               std::size_t total) {
    const std::size_t n = capacity.size();
    const double universe = static_cast<double>(
        std::accumulate(capacity.begin(), capacity.end(), std::size_t{0}));
    std::vector<std::size_t> alloc(n, 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double exact =
            universe > 0 ? static_cast<double>(total) * capacity[i] / universe : 0.0;
        alloc[i] = std::min(static_cast<std::size_t>(exact), capacity[i] - already_taken[i]);
        assigned += alloc[i];
        remainders.emplace_back(exact - std::floor(exact), i);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    // Top up from the largest fractional parts; a second pass covers
    // shortfalls forced by capacity limits.
    for (std::size_t pass = 0; assigned < total && pass < 2; ++pass) {
        for (const auto& [frac, i] : remainders) {
            if (assigned == total) break;
            if (alloc[i] + already_taken[i] < capacity[i]) {
                ++alloc[i];
                ++assigned;
            }
        }
    }
    return alloc;
}

}  // namespace

std::pair<Dataset, Dataset> split_train_test(const Dataset& d, std::size_t n_train,
                                             std::size_t n_test, std::uint64_t seed,
                                             bool stratify_by_stream) {
    if (n_train + n_test > d.size()) {
        throw SizeError("split sizes " + std::to_string(n_train) + "+" + std::to_string(n_test) +
                        " exceed dataset size " + std::to_string(d.size()));
    }
    Dataset train, test;
    if (!stratify_by_stream) {
        std::vector<std::size_t> idx(d.size());
        std::iota(idx.begin(), idx.end(), 0);
        Rng rng(seed);
        std::shuffle(idx.begin(), idx.end(), rng);
        for (std::size_t i = 0; i < n_train; ++i) train.records.push_back(d.records[idx[i]]);
        for (std::size_t i = 0; i < n_test; ++i) test.records.push_back(d.records[idx[n_train + i]]);
        return {train, test};
    }

    std::array<std::vector<std::size_t>, 2> strata;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const int f = d.records[i].stream_flag;
        strata[f == 1 ? 1 : 0].push_back(i);
    }
    std::vector<std::size_t> capacity = {strata[0].size(), strata[1].size()};
    std::vector<std::size_t> none = {0, 0};
    const auto train_alloc = allocate_proportional(capacity, none, n_train);
    const auto test_alloc = allocate_proportional(capacity, train_alloc, n_test);
    for (int s = 0; s < 2; ++s) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
        std::shuffle(strata[s].begin(), strata[s].end(), rng);
        for (std::size_t i = 0; i < train_alloc[s]; ++i)
            train.records.push_back(d.records[strata[s][i]]);
        for (std::size_t i = 0; i < test_alloc[s]; ++i)
            test.records.push_back(d.records[strata[s][train_alloc[s] + i]]);
    }
    return {train, test};
}

std::array<double, kNumColumns> normalize_row(const std::array<double, kNumColumns>& row,
                                              const NormStats& stats) {
    std::array<double, kNumColumns> out{};
    for (std::size_t c = 0; c < kNumColumns; ++c) {
        const double range = stats.max[c] - stats.min[c];
        out[c] = range > 0.0 ? (row[c] - stats.min[c]) / range : 0.0;
    }
    return out;
}

std::array<double, kNumColumns> denormalize_row(const std::array<double, kNumColumns>& row,
                                                const NormStats& stats) {
    std::array<double, kNumColumns> out{};
    for (std::size_t c = 0; c < kNumColumns; ++c) {
        const double range = stats.max[c] - stats.min[c];
        out[c] = range > 0.0 ? row[c] * range + stats.min[c] : stats.min[c];
    }
    return out;
}

namespace {

DataRecord record_from_array(const std::array<double, kNumColumns>& a) {
    DataRecord r;
    r.pressure_psi = a[0];
    r.solids_pct = a[1];
    r.size_um = a[2];
    r.stream_flag = static_cast<int>(std::lround(a[3]));
    r.cum_passing_pct = a[4];
    return r;
}

}  // namespace

std::pair<Dataset, NormStats> normalize(const Dataset& d) {
    if (d.empty()) throw SizeError("normalize: empty dataset");
    NormStats stats;
    stats.min.fill(std::numeric_limits<double>::infinity());
    stats.max.fill(-std::numeric_limits<double>::infinity());
    for (const auto& r : d.records) {
        const auto v = r.as_array();
        for (std::size_t c = 0; c < kNumColumns; ++c) {
            stats.min[c] = std::min(stats.min[c], v[c]);
            stats.max[c] = std::max(stats.max[c], v[c]);
        }
    }
    Dataset out;
    out.records.reserve(d.size());
    for (const auto& r : d.records) {
        out.records.push_back(record_from_array(normalize_row(r.as_array(), stats)));
    }
    return {out, stats};
}

Dataset denormalize(const Dataset& d, const NormStats& stats) {
    Dataset out;
    out.records.reserve(d.size());
    for (const auto& r : d.records) {
        out.records.push_back(record_from_array(denormalize_row(r.as_array(), stats)));
    }
    return out;
}

std::vector<std::vector<double>> to_vectors(const Dataset& d) {
    std::vector<std::vector<double>> out;
    out.reserve(d.size());
    for (const auto& r : d.records) {
        const auto a = r.as_array();
        out.emplace_back(a.begin(), a.end());
    }
    return out;
}

}  // namespace gct

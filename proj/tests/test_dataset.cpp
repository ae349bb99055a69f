#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "gct/dataset.hpp"
#include "gct/errors.hpp"
#include "gct/hydrosim.hpp"
#include "test_helpers.hpp"

using namespace gct;

namespace {

// Records with unique size_um so set membership is observable.
Dataset unique_records(std::size_t n) {
    Dataset d;
    for (std::size_t i = 0; i < n; ++i) {
        DataRecord r;
        r.pressure_psi = 5.0 + (i % 7);
        r.solids_pct = 10.0 + (i % 11);
        r.size_um = 1.0 + static_cast<double>(i);
        r.stream_flag = static_cast<int>(i % 2);
        r.cum_passing_pct = static_cast<double>(i % 101);
        d.records.push_back(r);
    }
    return d;
}

std::set<double> size_keys(const Dataset& d) {
    std::set<double> keys;
    for (const auto& r : d.records) keys.insert(r.size_um);
    return keys;
}

}  // namespace

TEST_CASE("load_csv ingests well-formed rows in order") {
    const auto path = testutil::scratch_file("wellformed.csv");
    testutil::write_file(path,
                         "pressure_psi,solids_pct,size_um,stream_flag,cum_passing_pct\n"
                         "6,10,5,0,18.5\n"
                         "9,20,53,1,77.25\n"
                         "12,30,150,0,100\n");
    const Dataset d = load_csv(path.string());
    REQUIRE(d.size() == 3);
    CHECK(d.records[0].pressure_psi == 6.0);
    CHECK(d.records[1].size_um == 53.0);
    CHECK(d.records[1].stream_flag == 1);
    CHECK(d.records[2].cum_passing_pct == 100.0);
}

TEST_CASE("load_csv cites the offending row on invariant violations") {
    const auto path = testutil::scratch_file("badflag.csv");
    std::string content = "pressure_psi,solids_pct,size_um,stream_flag,cum_passing_pct\n";
    for (int i = 1; i <= 4; ++i) content += "6,10,5,0,18.5\n";
    content += "6,10,5,2,18.5\n";  // stream_flag=2 on data row 5
    testutil::write_file(path, content);
    const auto msg = testutil::error_message<ValidationError>([&] { load_csv(path.string()); });
    CHECK(msg.find("row 5") != std::string::npos);
    CHECK(msg.find("stream_flag") != std::string::npos);
}

TEST_CASE("load_csv schema errors name the column") {
    const auto missing = testutil::scratch_file("missing.csv");
    testutil::write_file(missing, "pressure_psi,solids_pct,size_um,stream_flag\n");
    CHECK(testutil::error_message<SchemaError>([&] { load_csv(missing.string()); })
              .find("cum_passing_pct") != std::string::npos);

    const auto extra = testutil::scratch_file("extra.csv");
    testutil::write_file(extra,
                         "pressure_psi,solids_pct,size_um,stream_flag,cum_passing_pct,bonus\n");
    CHECK(testutil::error_message<SchemaError>([&] { load_csv(extra.string()); }).find("bonus") !=
          std::string::npos);

    const auto renamed = testutil::scratch_file("renamed.csv");
    testutil::write_file(renamed, "pressure,solids_pct,size_um,stream_flag,cum_passing_pct\n");
    CHECK(testutil::error_message<SchemaError>([&] { load_csv(renamed.string()); })
              .find("pressure_psi") != std::string::npos);
}

TEST_CASE("load_csv rejects non-numeric cells with the row index") {
    const auto path = testutil::scratch_file("nonnumeric.csv");
    testutil::write_file(path,
                         "pressure_psi,solids_pct,size_um,stream_flag,cum_passing_pct\n"
                         "6,10,5,0,18.5\n"
                         "6,abc,5,0,18.5\n");
    const auto msg = testutil::error_message<ParseError>([&] { load_csv(path.string()); });
    CHECK(msg.find("row 2") != std::string::npos);
}

TEST_CASE("generated dataset survives a write/load round trip") {
    const CycloneSimConfig cfg;
    const Dataset original = generate(cfg);
    const auto path = testutil::scratch_file("roundtrip.csv");
    write_csv(original, path.string());
    const Dataset reloaded = load_csv(path.string());
    REQUIRE(reloaded.size() == original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
        const auto a = original.records[i].as_array();
        const auto b = reloaded.records[i].as_array();
        for (std::size_t c = 0; c < kNumColumns; ++c) CHECK(std::abs(a[c] - b[c]) <= 1e-9);
    }
}

TEST_CASE("split produces disjoint subsets of the requested sizes") {
    const Dataset d = unique_records(169);
    const auto [train, test] = split_train_test(d, 150, 19, 42);
    CHECK(train.size() == 150);
    CHECK(test.size() == 19);

    const auto train_keys = size_keys(train);
    const auto test_keys = size_keys(test);
    CHECK(train_keys.size() == 150);  // no duplicates
    CHECK(test_keys.size() == 19);
    for (double k : test_keys) CHECK(train_keys.count(k) == 0);

    const auto all_keys = size_keys(d);
    for (double k : train_keys) CHECK(all_keys.count(k) == 1);
    for (double k : test_keys) CHECK(all_keys.count(k) == 1);
}

TEST_CASE("split with empty test set selects a permutation subset") {
    const Dataset d = unique_records(20);
    const auto [train, test] = split_train_test(d, 12, 0, 3);
    CHECK(test.empty());
    CHECK(train.size() == 12);
    const auto all_keys = size_keys(d);
    CHECK(size_keys(train).size() == 12);
    for (double k : size_keys(train)) CHECK(all_keys.count(k) == 1);
}

TEST_CASE("split is deterministic per seed and varies across seeds") {
    const Dataset d = unique_records(169);
    const auto [t1, s1] = split_train_test(d, 150, 19, 7);
    const auto [t2, s2] = split_train_test(d, 150, 19, 7);
    CHECK(size_keys(t1) == size_keys(t2));
    CHECK(size_keys(s1) == size_keys(s2));

    std::size_t differing = 0;
    for (std::uint64_t pair = 0; pair < 20; ++pair) {
        const auto [a, ignored_a] = split_train_test(d, 150, 19, 2 * pair);
        const auto [b, ignored_b] = split_train_test(d, 150, 19, 2 * pair + 1);
        if (size_keys(a) != size_keys(b)) ++differing;
    }
    CHECK(differing == 20);
}

TEST_CASE("split rejects oversized requests") {
    const Dataset d = unique_records(10);
    CHECK_THROWS_AS(split_train_test(d, 8, 3, 0), SizeError);
}

TEST_CASE("stratified split keeps stream proportions") {
    Dataset d = unique_records(100);  // 50 records per stream
    const auto [train, test] = split_train_test(d, 60, 20, 5, true);
    REQUIRE(train.size() == 60);
    REQUIRE(test.size() == 20);
    const auto count_stream = [](const Dataset& s, int flag) {
        return std::count_if(s.records.begin(), s.records.end(),
                             [&](const DataRecord& r) { return r.stream_flag == flag; });
    };
    CHECK(count_stream(train, 0) == 30);
    CHECK(count_stream(train, 1) == 30);
    CHECK(count_stream(test, 0) == 10);
    CHECK(count_stream(test, 1) == 10);
    for (double k : size_keys(test)) CHECK(size_keys(train).count(k) == 0);
}

TEST_CASE("normalize maps columns onto the unit interval") {
    Dataset d;
    for (double p : {10.0, 20.0, 30.0}) {
        DataRecord r;
        r.pressure_psi = p;
        r.solids_pct = 50.0;
        r.size_um = 10.0;
        r.stream_flag = 0;
        r.cum_passing_pct = 50.0;
        d.records.push_back(r);
    }
    const auto [norm, stats] = normalize(d);
    CHECK(norm.records[0].pressure_psi == doctest::Approx(0.0));
    CHECK(norm.records[1].pressure_psi == doctest::Approx(0.5));
    CHECK(norm.records[2].pressure_psi == doctest::Approx(1.0));
    CHECK(stats.min[0] == 10.0);
    CHECK(stats.max[0] == 30.0);

    SUBCASE("constant columns map to zero with min==max stats") {
        CHECK(norm.records[0].solids_pct == 0.0);
        CHECK(norm.records[2].solids_pct == 0.0);
        CHECK(stats.min[1] == 50.0);
        CHECK(stats.max[1] == 50.0);
    }
}

TEST_CASE("denormalize inverts normalize within 1e-12") {
    const Dataset d = generate(CycloneSimConfig{});
    const auto [norm, stats] = normalize(d);
    const Dataset back = denormalize(norm, stats);
    REQUIRE(back.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto a = d.records[i].as_array();
        const auto b = back.records[i].as_array();
        for (std::size_t c = 0; c < kNumColumns; ++c) CHECK(std::abs(a[c] - b[c]) <= 1e-12);
    }
}

TEST_CASE("normalize is idempotent on already-normalized data") {
    Dataset d = unique_records(17);
    const auto [norm1, stats1] = normalize(d);
    const auto [norm2, stats2] = normalize(norm1);
    for (std::size_t i = 0; i < norm1.size(); ++i) {
        const auto a = norm1.records[i].as_array();
        const auto b = norm2.records[i].as_array();
        for (std::size_t c = 0; c < kNumColumns; ++c) CHECK(std::abs(a[c] - b[c]) <= 1e-12);
    }
}

TEST_CASE("normalize rejects empty datasets") {
    CHECK_THROWS_AS(normalize(Dataset{}), SizeError);
}

TEST_CASE("a header-only file loads as an empty dataset") {
    const auto path = testutil::scratch_file("headeronly.csv");
    testutil::write_file(path, "pressure_psi,solids_pct,size_um,stream_flag,cum_passing_pct\n");
    const Dataset d = load_csv(path.string());
    CHECK(d.empty());
    CHECK_THROWS_AS(normalize(d), SizeError);  // training operations still reject it
}

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "rsaco/decision_table.hpp"
#include "rsaco/synth_dga.hpp"
#include "test_paths.hpp"

using namespace rsaco;

namespace {

LoadResult parse(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
}

DecisionTable random_table(std::mt19937_64& rng, std::size_t n, std::size_t width) {
    std::vector<std::string> names;
    for (std::size_t a = 0; a < width; ++a) names.push_back("x" + std::to_string(a));
    std::normal_distribution<double> normal(0.0, 1e3);
    std::vector<double> values(n * width);
    for (auto& v : values) v = normal(rng) * std::exp(normal(rng) / 1e3);
    std::vector<Label> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Label>(i % 2);
    return DecisionTable(names, values, labels);
}

std::vector<std::vector<double>> sorted_rows(const std::vector<const DecisionTable*>& tables) {
    std::vector<std::vector<double>> rows;
    for (const auto* t : tables) {
        for (std::size_t i = 0; i < t->num_objects(); ++i) {
            auto r = t->row(i);
            std::vector<double> row(r.begin(), r.end());
            row.push_back(t->decision(i));
            rows.push_back(std::move(row));
        }
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

}  // namespace

TEST_CASE("load_csv parses header and rows", "[data_model]") {
    auto loaded = parse("h2,ch4,label\n10.0,5.0,0\n900.0,400.0,1\n");
    REQUIRE(loaded.table.num_objects() == 2);
    REQUIRE(loaded.table.num_attributes() == 2);
    CHECK(loaded.dropped_count == 0);
    CHECK(loaded.table.attribute_names() == std::vector<std::string>{"h2", "ch4"});
    CHECK(loaded.table.value(1, 0) == 900.0);
    CHECK(loaded.table.decision(1) == 1);
}

TEST_CASE("load_csv drops rows with missing or non-numeric cells", "[data_model]") {
    auto loaded = parse("h2,ch4,label\n10.0,,1\n1,2,0\n3,4,1\n");
    CHECK(loaded.table.num_objects() == 2);
    CHECK(loaded.dropped_count == 1);

    auto junk = parse("h2,label\nabc,0\n1,0\n2,1\n");
    CHECK(junk.table.num_objects() == 2);
    CHECK(junk.dropped_count == 1);
}

TEST_CASE("load_csv rejects malformed input", "[data_model]") {
    CHECK_THROWS_AS(parse("h2,ch4,class\n1,2,0\n"), std::runtime_error);
    CHECK_THROWS_AS(parse("h2,label\n1,2\n"), std::runtime_error);
    CHECK_THROWS_AS(parse("h2,label\n,1\n"), std::runtime_error);  // nothing survives
    CHECK_THROWS_AS(parse("h2,label\n1,0,3\n"), std::runtime_error);
    CHECK_THROWS_AS(parse(""), std::runtime_error);
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), std::runtime_error);
}

TEST_CASE("DecisionTable rejects invariant violations", "[data_model]") {
    CHECK_THROWS_AS(DecisionTable({"a"}, {1.0, 2.0}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(DecisionTable({"a"}, {1.0}, {2}), std::invalid_argument);
    CHECK_THROWS_AS(DecisionTable({"a"}, {std::nan("")}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(DecisionTable({"a"}, {1.0}, {1}).require_trainable(), std::invalid_argument);
}

TEST_CASE("nine-gas synthetic table round-trips through a file", "[data_model]") {
    const auto profile = load_profile(test_paths::profile());
    const auto table = generate(profile, 2000, 11);
    const auto path = std::filesystem::temp_directory_path() / "rsaco_roundtrip.csv";
    write_csv(table, path);
    const auto loaded = load_csv(path);
    std::filesystem::remove(path);
    CHECK(loaded.table.num_objects() == 2000);
    CHECK(loaded.table.num_attributes() == 9);
    CHECK(loaded.dropped_count == 0);
    CHECK(loaded.table == table);
}

TEST_CASE("write_csv then read_csv is the identity on random tables", "[data_model][property]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto table = random_table(rng, 1 + trial * 3, 1 + trial % 5);
        std::stringstream ss;
        write_csv(table, ss);
        CHECK(read_csv(ss).table == table);
    }
}

TEST_CASE("split yields the 1400/600 partition of 2000 objects", "[data_model]") {
    const auto table = generate(load_profile(test_paths::profile()), 2000, 3);
    const auto parts = split(table, {0.7, 42});
    CHECK(parts.train.num_objects() == 1400);
    CHECK(parts.test.num_objects() == 600);
}

TEST_CASE("split is deterministic for a fixed seed", "[data_model]") {
    std::mt19937_64 rng(1);
    const auto table = random_table(rng, 10, 2);
    const auto a = split(table, {0.5, 9});
    const auto b = split(table, {0.5, 9});
    CHECK(a.train == b.train);
    CHECK(a.test == b.test);
}

TEST_CASE("split retries until both sides hold both classes", "[data_model]") {
    const DecisionTable table({"x"}, {1, 2, 3, 4}, {0, 0, 1, 1});
    bool retried = false;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        const auto parts = split(table, {0.5, seed});
        CHECK(parts.train.has_both_classes());
        CHECK(parts.test.has_both_classes());
        retried = retried || parts.attempts > 1;
    }
    CHECK(retried);
}

TEST_CASE("split errors on impossible inputs", "[data_model]") {
    const DecisionTable one_each({"x"}, {1, 2, 3}, {0, 1, 1});
    CHECK_THROWS_AS(split(one_each, {0.5, 1}), std::invalid_argument);
    const DecisionTable table({"x"}, {1, 2, 3, 4}, {0, 0, 1, 1});
    CHECK_THROWS_AS(split(table, {1.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(split(table, {0.1, 1}), std::runtime_error);
}

TEST_CASE("split partitions the table as a multiset", "[data_model][property]") {
    std::mt19937_64 rng(77);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto table = random_table(rng, 20 + seed * 7, 3);
        const auto parts = split(table, {0.3 + 0.01 * static_cast<double>(seed), seed});
        CHECK(parts.train.num_objects() + parts.test.num_objects() == table.num_objects());
        CHECK(sorted_rows({&parts.train, &parts.test}) == sorted_rows({&table}));
    }
}

TEST_CASE("clip_outliers bounds each attribute by its percentile range", "[data_model]") {
    std::vector<double> values;
    std::vector<Label> labels;
    for (int i = 1; i <= 1000; ++i) {
        values.push_back(i);
        labels.push_back(static_cast<Label>(i % 2));
    }
    values.back() = 1e9;
    const DecisionTable table({"x"}, values, labels);
    const auto clipped = clip_outliers(table);
    const auto col = clipped.column(0);
    CHECK(*std::max_element(col.begin(), col.end()) == 995.0);
    CHECK(*std::min_element(col.begin(), col.end()) == 5.0);
    CHECK(clipped.decisions() == table.decisions());
}

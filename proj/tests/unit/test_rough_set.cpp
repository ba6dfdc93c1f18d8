#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "rsaco/rough_set.hpp"

using namespace rsaco;

namespace {

DiscretizedTable make_table(const std::vector<std::vector<int>>& rows,
                            const std::vector<int>& labels, std::vector<std::size_t> counts = {}) {
    const std::size_t width = rows.empty() ? counts.size() : rows.front().size();
    if (counts.empty()) {
        counts.assign(width, 1);
        for (const auto& r : rows) {
            for (std::size_t a = 0; a < width; ++a) {
                counts[a] = std::max<std::size_t>(counts[a], static_cast<std::size_t>(r[a]) + 1);
            }
        }
    }
    std::vector<Bin> bins;
    for (const auto& r : rows) {
        for (int b : r) bins.push_back(static_cast<Bin>(b));
    }
    std::vector<Label> decisions(labels.begin(), labels.end());
    return DiscretizedTable(std::move(counts), std::move(bins), std::move(decisions));
}

DiscretizedTable from_small(const oracle::SmallTable& t) {
    std::vector<std::size_t> counts(t.bin_counts.begin(), t.bin_counts.end());
    return make_table(t.rows, t.labels, counts);
}

std::vector<std::size_t> all_attributes(std::size_t width) {
    std::vector<std::size_t> attrs(width);
    for (std::size_t a = 0; a < width; ++a) attrs[a] = a;
    return attrs;
}

bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("partition groups identical bin vectors", "[rough_set]") {
    const auto table = make_table({{0, 1}, {0, 1}, {1, 0}}, {1, 1, 0});
    const auto part = partition(table);
    REQUIRE(part.classes.size() == 2);
    CHECK(part.classes[0] == std::vector<std::size_t>{0, 1});
    CHECK(part.classes[1] == std::vector<std::size_t>{2});
    CHECK(part.class_of == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("partition projects onto an attribute subset", "[rough_set]") {
    const auto table = make_table({{0, 0}, {1, 1}, {0, 1}}, {1, 0, 1});
    const std::vector<std::size_t> first{0};
    const auto part = partition(table, first);
    REQUIRE(part.classes.size() == 2);
    CHECK(part.classes[0] == std::vector<std::size_t>{0, 2});
    CHECK(part.classes[1] == std::vector<std::size_t>{1});
    CHECK_THROWS_AS(partition(table, std::vector<std::size_t>{}), std::invalid_argument);
    CHECK_THROWS_AS(partition(table, std::vector<std::size_t>{5}), std::invalid_argument);
}

TEST_CASE("partition matches pairwise grouping on random tables", "[rough_set][property]") {
    std::mt19937_64 rng(50);
    for (int trial = 0; trial < 200; ++trial) {
        const auto small = oracle::random_small_table(rng, 50);
        const auto table = from_small(small);
        const auto attrs = all_attributes(small.bin_counts.size());
        CHECK(partition(table, attrs).classes == oracle::pairwise_partition(small.rows, attrs));
    }
}

TEST_CASE("full partition refines every subset partition", "[rough_set][property]") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        const auto small = oracle::random_small_table(rng, 60, 4);
        const auto table = from_small(small);
        const auto fine = partition(table);
        for (std::size_t a = 0; a < table.num_attributes(); ++a) {
            const std::vector<std::size_t> subset{a};
            const auto coarse = partition(table, subset);
            for (const auto& cls : fine.classes) {
                const auto home = coarse.class_of[cls.front()];
                for (auto i : cls) CHECK(coarse.class_of[i] == home);
            }
        }
    }
}

TEST_CASE("approximate: crisp and fully rough sets", "[rough_set]") {
    {
        const auto table = make_table({{0}, {0}, {1}}, {1, 1, 0});
        const auto approx = approximate(partition(table), table.decisions(), 1);
        CHECK(approx.lower == std::vector<std::size_t>{0, 1});
        CHECK(approx.upper == std::vector<std::size_t>{0, 1});
        CHECK(approx.boundary.empty());
    }
    {
        const auto table = make_table({{0}, {0}}, {1, 0});
        const auto approx = approximate(partition(table), table.decisions(), 1);
        CHECK(approx.lower.empty());
        CHECK(approx.upper == std::vector<std::size_t>{0, 1});
        CHECK(approx.boundary == std::vector<std::size_t>{0, 1});
    }
}

TEST_CASE("approximations match the set definitions on random tables", "[rough_set][property]") {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 200; ++trial) {
        const auto small = oracle::random_small_table(rng);
        const auto table = from_small(small);
        const auto part = partition(table);
        for (int target : {0, 1}) {
            const auto approx = approximate(part, table.decisions(), static_cast<Label>(target));
            CHECK(approx.lower == oracle::lower(small.rows, small.labels, target));
            CHECK(approx.upper == oracle::upper(small.rows, small.labels, target));
        }
    }
}

TEST_CASE("approximation invariants hold", "[rough_set][property]") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 500; ++trial) {
        const auto small = oracle::random_small_table(rng);
        const auto table = from_small(small);
        const auto part = partition(table);
        for (Label target : {Label{0}, Label{1}}) {
            const auto approx = approximate(part, table.decisions(), target);
            std::vector<std::size_t> x;
            for (std::size_t i = 0; i < small.labels.size(); ++i) {
                if (table.decision(i) == target) x.push_back(i);
            }
            CHECK(is_subset(approx.lower, x));
            CHECK(is_subset(x, approx.upper));
            std::vector<std::size_t> diff;
            std::set_difference(approx.upper.begin(), approx.upper.end(), approx.lower.begin(),
                                approx.lower.end(), std::back_inserter(diff));
            CHECK(diff == approx.boundary);

            const std::set<std::size_t> lower(approx.lower.begin(), approx.lower.end());
            const std::set<std::size_t> upper(approx.upper.begin(), approx.upper.end());
            for (std::size_t i = 0; i < table.num_objects(); ++i) {
                const double mu = membership(part, table.decisions(), i, target);
                CHECK((mu == 1.0) == (lower.count(i) == 1));
                CHECK((mu > 0.0) == (upper.count(i) == 1));
            }
        }
    }
}

TEST_CASE("membership is the target share of the elementary set", "[rough_set]") {
    const auto table = make_table({{0}, {0}, {0}, {1}}, {1, 1, 0, 0});
    const auto part = partition(table);
    CHECK(membership(part, table.decisions(), 0, 1) == Catch::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(membership(part, table.decisions(), 3, 0) == 1.0);
    CHECK(membership(part, table.decisions(), 3, 1) == 0.0);

    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 100; ++trial) {
        const auto small = oracle::random_small_table(rng);
        const auto t = from_small(small);
        const auto p = partition(t);
        for (std::size_t i = 0; i < t.num_objects(); ++i) {
            CHECK(membership(p, t.decisions(), i, 1) ==
                  oracle::membership(small.rows, small.labels, i, 1));
        }
    }
}

TEST_CASE("induce_rules builds one rule per elementary set", "[rough_set]") {
    const auto table = make_table({{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 0}, {1, 1}},
                                  {0, 1, 0, 1, 0, 1});
    const auto rules = induce_rules(table);
    CHECK(rules.size() == 4);
    CHECK(rules.num_certain() == 4);
}

TEST_CASE("induce_rules: pure and mixed classes", "[rough_set]") {
    SECTION("pure class of five") {
        const auto table = make_table({{0}, {0}, {0}, {0}, {0}, {1}}, {1, 1, 1, 1, 1, 0});
        const auto rules = induce_rules(table);
        const auto* rule = rules.find(std::vector<Bin>{0});
        REQUIRE(rule != nullptr);
        CHECK(rule->decision == 1);
        CHECK(rule->support == 5);
        CHECK(rule->confidence == 1.0);
        CHECK(rule->certain);
    }
    SECTION("three to two mix") {
        const auto table = make_table({{0}, {0}, {0}, {0}, {0}, {1}}, {1, 0, 1, 0, 1, 0});
        const auto rules = induce_rules(table);
        const auto* rule = rules.find(std::vector<Bin>{0});
        REQUIRE(rule != nullptr);
        CHECK(rule->decision == 1);
        CHECK(rule->confidence == Catch::Approx(0.6).epsilon(1e-15));
        CHECK_FALSE(rule->certain);
        const auto part = partition(table);
        CHECK(rule->confidence == membership(part, table.decisions(), 0, 1));
    }
    SECTION("even split goes to the globally larger class, then to 1") {
        const auto zeros_lead = make_table({{0}, {0}, {1}, {1}, {1}}, {1, 0, 0, 0, 1});
        CHECK(induce_rules(zeros_lead).find(std::vector<Bin>{0})->decision == 0);
        CHECK(induce_rules(zeros_lead).default_decision() == 0);
        const auto balanced = make_table({{0}, {0}, {1}, {1}}, {1, 0, 0, 1});
        CHECK(induce_rules(balanced).find(std::vector<Bin>{0})->decision == 1);
        CHECK(induce_rules(balanced).default_decision() == 1);
    }
    CHECK_THROWS_AS(induce_rules(make_table({{0}, {1}}, {1, 1})), std::invalid_argument);
}

TEST_CASE("classify: exact match, fallback and score", "[rough_set]") {
    const auto table = make_table({{0, 0}, {0, 0}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {0, 1}},
                                  {1, 1, 0, 0, 0, 1, 0},
                                  {2, 2});
    const auto rules = induce_rules(table);
    const auto certain = rules.classify(std::vector<Bin>{0, 0});
    CHECK(certain.decision == 1);
    CHECK(certain.score == 1.0);

    const auto mixed = rules.classify(std::vector<Bin>{1, 1});
    CHECK(mixed.decision == 0);
    CHECK(rules.find(std::vector<Bin>{1, 1})->confidence == 0.75);
    CHECK(mixed.score == Catch::Approx(0.25).epsilon(1e-15));
    const auto part = partition(table);
    CHECK(mixed.score == membership(part, table.decisions(), 2, 1));

    const auto unseen = rules.classify(std::vector<Bin>{1, 0});
    CHECK(unseen.decision == rules.default_decision());
    CHECK(rules.default_decision() == 0);
    CHECK(unseen.score == 0.5);

    CHECK_THROWS_AS(rules.classify(std::vector<Bin>{0}), std::invalid_argument);
    CHECK_THROWS_AS(rules.classify(std::vector<Bin>{2, 0}), std::invalid_argument);
}

TEST_CASE("rule set properties on random tables", "[rough_set][property]") {
    std::mt19937_64 rng(55);
    int checked = 0;
    while (checked < 300) {
        const auto small = oracle::random_small_table(rng);
        const auto table = from_small(small);
        if (table.count_label(0) == 0 || table.count_label(1) == 0) continue;
        ++checked;
        const auto rules = induce_rules(table);
        const auto part = partition(table);
        CHECK(rules.size() == part.classes.size());

        std::set<BinVector> seen;
        for (const auto& r : rules.rules()) {
            CHECK(seen.insert(r.conditions).second);
            CHECK(r.support >= 1);
            CHECK(r.certain == (r.confidence == 1.0));
        }

        // Each training object is covered by exactly one rule and the majority
        // labels can do no worse than the majority vote.
        std::size_t correct = 0;
        for (std::size_t i = 0; i < table.num_objects(); ++i) {
            std::size_t matches = 0;
            for (const auto& r : rules.rules()) {
                matches += std::equal(r.conditions.begin(), r.conditions.end(),
                                      table.row(i).begin()) ? 1 : 0;
            }
            CHECK(matches == 1);
            correct += rules.classify(table.row(i)).decision == table.decision(i) ? 1 : 0;
        }
        const auto prior = std::max(table.count_label(0), table.count_label(1));
        CHECK(correct >= prior);

        // Rough iff some rule is uncertain.
        const auto approx = approximate(part, table.decisions(), 1);
        CHECK(approx.boundary.empty() == (rules.num_certain() == rules.size()));
    }
}

TEST_CASE("RuleSet rejects duplicate conditions", "[rough_set]") {
    Rule r{{0}, 1, 1, 1.0, true};
    CHECK_THROWS_AS(RuleSet({r, r}, 1, {1}), std::invalid_argument);
}

TEST_CASE("rule JSON names attributes", "[rough_set]") {
    const auto table = make_table({{0, 1}, {1, 0}}, {1, 0});
    const auto json = to_json(induce_rules(table, {"h2", "co"}));
    CHECK(json.find("\"h2\": 0") != std::string::npos);
    CHECK(json.find("\"default_decision\": 1") != std::string::npos);
    CHECK(json.find("\"certain\": true") != std::string::npos);
}

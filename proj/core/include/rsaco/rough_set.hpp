#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rsaco/discretization.hpp"

namespace rsaco {

/// Equivalence classes of the indiscernibility relation over an attribute subset.
struct Partition {
    std::vector<std::vector<std::size_t>> classes;  // ordered by first member
    std::vector<std::size_t> class_of;              // object -> class index

    std::size_t num_objects() const noexcept { return class_of.size(); }
    const std::vector<std::size_t>& elementary_set(std::size_t object) const {
        return classes[class_of[object]];
    }
};

/// Groups objects whose bin vectors agree on every listed attribute.
/// Throws std::invalid_argument for an empty or out-of-range attribute list.
Partition partition(const DiscretizedTable& table, std::span<const std::size_t> attributes);

/// Partition over all attributes of the table.
Partition partition(const DiscretizedTable& table);

/// Lower/upper approximation of the objects labelled `target_class`. All sets sorted.
struct Approximation {
    std::vector<std::size_t> lower;
    std::vector<std::size_t> upper;
    std::vector<std::size_t> boundary;  // upper \ lower
    Label target_class = 1;
};

Approximation approximate(const Partition& part, std::span<const Label> decisions, Label target);

/// Fraction of the object's elementary set that carries `target`.
double membership(const Partition& part, std::span<const Label> decisions, std::size_t object,
                  Label target);

using BinVector = std::vector<Bin>;

struct BinVectorHash {
    std::size_t operator()(const BinVector& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto b : v) {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
        return h;
    }
};

/// if (conditions) then (decision). Conditions cover every attribute.
struct Rule {
    BinVector conditions;
    Label decision = 0;
    std::size_t support = 0;     // matching training objects
    double confidence = 0.0;     // share of the matching objects carrying `decision`
    bool certain = false;        // confidence == 1: drawn from a lower approximation
};

struct Classification {
    Label decision = 0;
    double score = 0.5;  // P(class 1)
};

class RuleSet {
public:
    RuleSet() = default;
    /// Throws std::invalid_argument if two rules share a condition vector.
    RuleSet(std::vector<Rule> rules, Label default_decision,
            std::vector<std::size_t> attribute_bin_counts,
            std::vector<std::string> attribute_names = {});

    const std::vector<Rule>& rules() const noexcept { return rules_; }
    std::size_t size() const noexcept { return rules_.size(); }
    std::size_t num_certain() const;
    Label default_decision() const noexcept { return default_decision_; }
    const std::vector<std::size_t>& attribute_bin_counts() const noexcept { return bin_counts_; }
    const std::vector<std::string>& attribute_names() const noexcept { return names_; }

    /// The rule with exactly these conditions, or nullptr.
    const Rule* find(std::span<const Bin> bins) const;

    /**
     * Decision and P(class 1) for a bin vector. A matching rule yields its
     * decision with score = confidence (decision 1) or 1 - confidence
     * (decision 0). A vector no rule covers gets the default decision with a
     * neutral 0.5. Throws std::invalid_argument for a wrong length or a bin
     * index outside the attribute's range.
     */
    Classification classify(std::span<const Bin> bins) const;

private:
    std::vector<Rule> rules_;
    Label default_decision_ = 1;
    std::vector<std::size_t> bin_counts_;
    std::vector<std::string> names_;
    std::unordered_map<BinVector, std::size_t, BinVectorHash> index_;
};

/**
 * One rule per elementary set of the full-attribute partition. The rule takes
 * the set's majority label; an even split goes to the more frequent class in
 * the table, then to label 1. Requires a non-empty table with both classes.
 */
RuleSet induce_rules(const DiscretizedTable& table,
                     std::vector<std::string> attribute_names = {});

inline Classification classify(const RuleSet& rules, std::span<const Bin> bins) {
    return rules.classify(bins);
}

/// {"rules": [{conditions: {attr: bin}, decision, support, confidence, certain}], default_decision}
std::string to_json(const RuleSet& rules);

}  // namespace rsaco

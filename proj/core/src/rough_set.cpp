#include "rsaco/rough_set.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace rsaco {

Partition partition(const DiscretizedTable& table, std::span<const std::size_t> attributes) {
    if (attributes.empty()) throw std::invalid_argument("partition: empty attribute set");
    for (auto a : attributes) {
        if (a >= table.num_attributes()) throw std::invalid_argument("partition: bad attribute");
    }
    Partition part;
    part.class_of.resize(table.num_objects());
    std::unordered_map<BinVector, std::size_t, BinVectorHash> seen;
    seen.reserve(table.num_objects());
    BinVector key(attributes.size());
    for (std::size_t i = 0; i < table.num_objects(); ++i) {
        for (std::size_t k = 0; k < attributes.size(); ++k) key[k] = table.bin(i, attributes[k]);
        auto [it, inserted] = seen.try_emplace(key, part.classes.size());
        if (inserted) part.classes.emplace_back();
        part.classes[it->second].push_back(i);
        part.class_of[i] = it->second;
    }
    return part;
}

Partition partition(const DiscretizedTable& table) {
    std::vector<std::size_t> all(table.num_attributes());
    for (std::size_t a = 0; a < all.size(); ++a) all[a] = a;
    return partition(table, all);
}

Approximation approximate(const Partition& part, std::span<const Label> decisions, Label target) {
    if (decisions.size() != part.num_objects()) {
        throw std::invalid_argument("approximate: partition and labels disagree in size");
    }
    Approximation approx;
    approx.target_class = target;
    for (const auto& cls : part.classes) {
        const auto hits = static_cast<std::size_t>(std::count_if(
            cls.begin(), cls.end(), [&](std::size_t i) { return decisions[i] == target; }));
        if (hits == 0) continue;
        approx.upper.insert(approx.upper.end(), cls.begin(), cls.end());
        auto& dest = hits == cls.size() ? approx.lower : approx.boundary;
        dest.insert(dest.end(), cls.begin(), cls.end());
    }
    std::sort(approx.lower.begin(), approx.lower.end());
    std::sort(approx.upper.begin(), approx.upper.end());
    std::sort(approx.boundary.begin(), approx.boundary.end());
    return approx;
}

double membership(const Partition& part, std::span<const Label> decisions, std::size_t object,
                  Label target) {
    const auto& cls = part.elementary_set(object);
    const auto hits = std::count_if(cls.begin(), cls.end(),
                                    [&](std::size_t i) { return decisions[i] == target; });
    return static_cast<double>(hits) / static_cast<double>(cls.size());
}

RuleSet::RuleSet(std::vector<Rule> rules, Label default_decision,
                 std::vector<std::size_t> attribute_bin_counts,
                 std::vector<std::string> attribute_names)
    : rules_(std::move(rules)),
      default_decision_(default_decision),
      bin_counts_(std::move(attribute_bin_counts)),
      names_(std::move(attribute_names)) {
    if (!names_.empty() && names_.size() != bin_counts_.size()) {
        throw std::invalid_argument("rule set: attribute names and bin counts disagree");
    }
    index_.reserve(rules_.size());
    for (std::size_t r = 0; r < rules_.size(); ++r) {
        if (rules_[r].conditions.size() != bin_counts_.size()) {
            throw std::invalid_argument("rule set: rule condition length mismatch");
        }
        if (!index_.try_emplace(rules_[r].conditions, r).second) {
            throw std::invalid_argument("rule set: duplicate condition vector");
        }
    }
}

std::size_t RuleSet::num_certain() const {
    return static_cast<std::size_t>(
        std::count_if(rules_.begin(), rules_.end(), [](const Rule& r) { return r.certain; }));
}

const Rule* RuleSet::find(std::span<const Bin> bins) const {
    auto it = index_.find(BinVector(bins.begin(), bins.end()));
    return it == index_.end() ? nullptr : &rules_[it->second];
}

Classification RuleSet::classify(std::span<const Bin> bins) const {
    if (bins.size() != bin_counts_.size()) {
        throw std::invalid_argument("classify: expected " + std::to_string(bin_counts_.size()) +
                                    " bins, got " + std::to_string(bins.size()));
    }
    for (std::size_t a = 0; a < bins.size(); ++a) {
        if (bins[a] >= bin_counts_[a]) throw std::invalid_argument("classify: bin out of range");
    }
    const Rule* rule = find(bins);
    if (rule == nullptr) return {default_decision_, 0.5};
    return {rule->decision, rule->decision == 1 ? rule->confidence : 1.0 - rule->confidence};
}

RuleSet induce_rules(const DiscretizedTable& table, std::vector<std::string> attribute_names) {
    if (table.num_objects() == 0) throw std::invalid_argument("induce_rules: empty table");
    const std::size_t positives = table.count_label(1);
    const std::size_t negatives = table.num_objects() - positives;
    if (positives == 0 || negatives == 0) {
        throw std::invalid_argument("induce_rules: both decision classes required");
    }
    const Label majority = positives >= negatives ? 1 : 0;

    const auto part = partition(table);
    std::vector<Rule> rules;
    rules.reserve(part.classes.size());
    for (const auto& cls : part.classes) {
        std::size_t ones = 0;
        for (auto i : cls) ones += table.decision(i);
        const std::size_t zeros = cls.size() - ones;

        Rule rule;
        auto first = table.row(cls.front());
        rule.conditions.assign(first.begin(), first.end());
        rule.decision = ones > zeros ? 1 : ones < zeros ? 0 : majority;
        const std::size_t agree = rule.decision == 1 ? ones : zeros;
        rule.support = cls.size();
        rule.confidence = static_cast<double>(agree) / static_cast<double>(cls.size());
        rule.certain = agree == cls.size();
        rules.push_back(std::move(rule));
    }
    return RuleSet(std::move(rules), majority, table.attribute_bin_counts(),
                   std::move(attribute_names));
}

std::string to_json(const RuleSet& rules) {
    using nlohmann::ordered_json;
    ordered_json list = ordered_json::array();
    for (const auto& r : rules.rules()) {
        ordered_json cond = ordered_json::object();
        for (std::size_t a = 0; a < r.conditions.size(); ++a) {
            const auto key = rules.attribute_names().empty() ? std::to_string(a)
                                                              : rules.attribute_names()[a];
            cond[key] = r.conditions[a];
        }
        list.push_back({{"conditions", std::move(cond)},
                        {"decision", r.decision},
                        {"support", r.support},
                        {"confidence", r.confidence},
                        {"certain", r.certain}});
    }
    ordered_json j = {{"rules", std::move(list)}, {"default_decision", rules.default_decision()}};
    return j.dump(2);
}

}  // namespace rsaco

#include "rsaco/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rsaco {

CutSet::CutSet(std::vector<std::string> attribute_names, std::vector<std::vector<double>> cuts)
    : names_(std::move(attribute_names)), cuts_(std::move(cuts)) {
    if (names_.size() != cuts_.size()) {
        throw std::invalid_argument("cut set: one cut list per attribute required");
    }
    for (const auto& list : cuts_) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (!std::isfinite(list[i])) throw std::invalid_argument("cut set: non-finite cut");
            if (i > 0 && !(list[i - 1] < list[i])) {
                throw std::invalid_argument("cut set: cuts must be strictly ascending");
            }
        }
    }
}

std::string to_json(const CutSet& cuts) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (std::size_t a = 0; a < cuts.num_attributes(); ++a) {
        j[cuts.attribute_names()[a]] = cuts.cuts(a);
    }
    return j.dump(2);
}

CutSet cuts_from_json(std::string_view json) {
    auto j = nlohmann::ordered_json::parse(json);
    if (!j.is_object()) throw std::invalid_argument("cut set json must be an object");
    std::vector<std::string> names;
    std::vector<std::vector<double>> cuts;
    for (auto& [key, value] : j.items()) {
        names.push_back(key);
        cuts.push_back(value.get<std::vector<double>>());
    }
    return CutSet(std::move(names), std::move(cuts));
}

void save_cuts(const CutSet& cuts, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << to_json(cuts) << '\n';
}

CutSet load_cuts(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return cuts_from_json(ss.str());
}

DiscretizedTable::DiscretizedTable(std::vector<std::size_t> attribute_bin_counts,
                                   std::vector<Bin> bins, std::vector<Label> decisions)
    : bin_counts_(std::move(attribute_bin_counts)),
      bins_(std::move(bins)),
      decisions_(std::move(decisions)) {
    const std::size_t width = bin_counts_.size();
    if (bins_.size() != decisions_.size() * width) {
        throw std::invalid_argument("discretized table: row width mismatch");
    }
    for (std::size_t i = 0; i < bins_.size(); ++i) {
        if (bins_[i] >= bin_counts_[i % width]) {
            throw std::invalid_argument("discretized table: bin index out of range");
        }
    }
}

std::size_t DiscretizedTable::count_label(Label label) const {
    return static_cast<std::size_t>(std::count(decisions_.begin(), decisions_.end(), label));
}

CutSet efb_cuts(const DecisionTable& table, std::size_t num_cuts) {
    if (num_cuts == 0) throw std::invalid_argument("efb_cuts: num_cuts must be positive");
    const std::size_t n = table.num_objects();
    const std::size_t intervals = num_cuts + 1;
    std::vector<std::vector<double>> all_cuts(table.num_attributes());

    for (std::size_t a = 0; a < table.num_attributes(); ++a) {
        auto sorted = table.column(a);
        std::sort(sorted.begin(), sorted.end());

        // Positions p where sorted[p-1] < sorted[p]; a cut there separates p objects below.
        std::vector<std::size_t> boundaries;
        for (std::size_t p = 1; p < n; ++p) {
            if (sorted[p - 1] < sorted[p]) boundaries.push_back(p);
        }

        auto& cuts = all_cuts[a];
        std::size_t prev = 0;
        for (std::size_t b = 1; b <= num_cuts; ++b) {
            // round(b * n / intervals) in integer arithmetic
            const std::size_t ideal = (2 * b * n + intervals) / (2 * intervals);
            auto first = std::upper_bound(boundaries.begin(), boundaries.end(), prev);
            if (first == boundaries.end()) break;
            auto it = std::lower_bound(first, boundaries.end(), ideal);
            if (it == boundaries.end()) {
                it = std::prev(it);
            } else if (it != first) {
                auto below = std::prev(it);
                if (ideal - *below <= *it - ideal) it = below;
            }
            prev = *it;
            cuts.push_back(0.5 * (sorted[prev - 1] + sorted[prev]));
        }
    }
    return CutSet(table.attribute_names(), std::move(all_cuts));
}

DiscretizedTable apply_cuts(const DecisionTable& table, const CutSet& cuts) {
    if (cuts.num_attributes() != table.num_attributes()) {
        throw std::invalid_argument("apply_cuts: table has " +
                                    std::to_string(table.num_attributes()) +
                                    " attributes, cut set has " +
                                    std::to_string(cuts.num_attributes()));
    }
    const std::size_t width = table.num_attributes();
    std::vector<std::size_t> counts(width);
    for (std::size_t a = 0; a < width; ++a) counts[a] = cuts.bin_count(a);

    std::vector<Bin> bins(table.num_objects() * width);
    for (std::size_t i = 0; i < table.num_objects(); ++i) {
        for (std::size_t a = 0; a < width; ++a) {
            bins[i * width + a] = bin_of(cuts.cuts(a), table.value(i, a));
        }
    }
    return DiscretizedTable(std::move(counts), std::move(bins), table.decisions());
}

PercentileGrid::PercentileGrid(const DecisionTable& table) {
    if (table.empty()) throw std::invalid_argument("percentile grid: empty table");
    sorted_.reserve(table.num_attributes());
    for (std::size_t a = 0; a < table.num_attributes(); ++a) {
        auto col = table.column(a);
        std::sort(col.begin(), col.end());
        sorted_.push_back(std::move(col));
    }
}

double PercentileGrid::value(std::size_t attribute, int p) const {
    if (p < kMinPercentile || p > kMaxPercentile) {
        throw std::out_of_range("percentile must lie in [1,99]");
    }
    const auto& col = sorted_.at(attribute);
    const std::size_t n = col.size();
    std::size_t rank = (static_cast<std::size_t>(p) * n + 99) / 100;  // ceil(p*n/100)
    rank = std::max<std::size_t>(rank, 1);
    return col[rank - 1];
}

double percentile_to_cut(const DecisionTable& table, std::size_t attribute, int p) {
    if (table.empty()) throw std::invalid_argument("percentile_to_cut: empty table");
    if (attribute >= table.num_attributes()) throw std::out_of_range("attribute index");
    if (p < kMinPercentile || p > kMaxPercentile) {
        throw std::out_of_range("percentile must lie in [1,99]");
    }
    auto col = table.column(attribute);
    const std::size_t rank =
        std::max<std::size_t>((static_cast<std::size_t>(p) * col.size() + 99) / 100, 1);
    std::nth_element(col.begin(), col.begin() + static_cast<std::ptrdiff_t>(rank - 1), col.end());
    return col[rank - 1];
}

}  // namespace rsaco

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsaco/decision_table.hpp"

namespace rsaco {

using Bin = std::uint16_t;

/// Per-attribute strictly ascending cut values. k cuts give bins {0..k}.
class CutSet {
public:
    CutSet() = default;
    /// Throws std::invalid_argument if a list is unsorted, repeats a value or is non-finite.
    CutSet(std::vector<std::string> attribute_names, std::vector<std::vector<double>> cuts);

    std::size_t num_attributes() const noexcept { return cuts_.size(); }
    const std::vector<double>& cuts(std::size_t attribute) const { return cuts_[attribute]; }
    const std::vector<std::vector<double>>& all() const noexcept { return cuts_; }
    const std::vector<std::string>& attribute_names() const noexcept { return names_; }
    std::size_t bin_count(std::size_t attribute) const { return cuts_[attribute].size() + 1; }

    friend bool operator==(const CutSet&, const CutSet&) = default;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<double>> cuts_;
};

/// JSON object {"attribute_name": [cut, ...], ...} in attribute order.
std::string to_json(const CutSet& cuts);
CutSet cuts_from_json(std::string_view json);
void save_cuts(const CutSet& cuts, const std::filesystem::path& path);
CutSet load_cuts(const std::filesystem::path& path);

/// Bin index of `value`: the number of cuts <= value, so a value equal to a cut
/// lands in the upper bin and bins are half-open [cut, next).
inline Bin bin_of(std::span<const double> cuts, double value) {
    Bin b = 0;
    while (b < cuts.size() && cuts[b] <= value) ++b;
    return b;
}

/// Row-major bin indices plus decisions.
class DiscretizedTable {
public:
    DiscretizedTable() = default;
    /// Throws std::invalid_argument when a bin is out of range or shapes disagree.
    DiscretizedTable(std::vector<std::size_t> attribute_bin_counts, std::vector<Bin> bins,
                     std::vector<Label> decisions);

    std::size_t num_objects() const noexcept { return decisions_.size(); }
    std::size_t num_attributes() const noexcept { return bin_counts_.size(); }
    const std::vector<std::size_t>& attribute_bin_counts() const noexcept { return bin_counts_; }

    std::span<const Bin> row(std::size_t object) const {
        return {bins_.data() + object * bin_counts_.size(), bin_counts_.size()};
    }
    Bin bin(std::size_t object, std::size_t attribute) const {
        return bins_[object * bin_counts_.size() + attribute];
    }
    Label decision(std::size_t object) const { return decisions_[object]; }
    const std::vector<Label>& decisions() const noexcept { return decisions_; }
    std::size_t count_label(Label label) const;

    friend bool operator==(const DiscretizedTable&, const DiscretizedTable&) = default;

private:
    std::vector<std::size_t> bin_counts_;
    std::vector<Bin> bins_;
    std::vector<Label> decisions_;
};

/**
 * Equal frequency binning. For each attribute, places up to `num_cuts` cuts so
 * the num_cuts+1 intervals hold equal object counts (within one when the
 * count does not divide). A cut sits at the midpoint of the two sorted values
 * straddling the quantile boundary.
 *
 * Tied values cannot be separated, so boundaries move to the nearest position
 * between distinct values; an attribute with d distinct values gets at most
 * d-1 cuts and a constant attribute gets none.
 */
CutSet efb_cuts(const DecisionTable& table, std::size_t num_cuts);

/// Throws std::invalid_argument on an attribute-count mismatch.
DiscretizedTable apply_cuts(const DecisionTable& table, const CutSet& cuts);

inline constexpr int kMinPercentile = 1;
inline constexpr int kMaxPercentile = 99;

/// Nearest-rank p-th percentile: the ceil(p/100 * n)-th smallest value.
double percentile_to_cut(const DecisionTable& table, std::size_t attribute, int p);

/// Sorted copies of every column, for repeated percentile lookups.
class PercentileGrid {
public:
    explicit PercentileGrid(const DecisionTable& table);

    std::size_t num_attributes() const noexcept { return sorted_.size(); }
    double value(std::size_t attribute, int p) const;
    double min(std::size_t attribute) const { return sorted_[attribute].front(); }
    double max(std::size_t attribute) const { return sorted_[attribute].back(); }

private:
    std::vector<std::vector<double>> sorted_;
};

}  // namespace rsaco

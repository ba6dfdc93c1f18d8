#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rsaco {

/// Binary decision label. 0 = healthy, 1 = faulty.
using Label = std::uint8_t;

/**
 * A decision system: objects (rows) described by continuous condition
 * attributes plus one binary decision attribute.
 *
 * Values are stored row-major. The table is immutable once constructed and
 * every constructor path validates the invariants: each row has one value per
 * attribute, all values are finite, every decision is 0 or 1.
 */
class DecisionTable {
public:
    DecisionTable() = default;

    /// Throws std::invalid_argument when a row width, value or label is bad.
    DecisionTable(std::vector<std::string> attribute_names,
                  std::vector<double> values_row_major,
                  std::vector<Label> decisions);

    std::size_t num_objects() const noexcept { return decisions_.size(); }
    std::size_t num_attributes() const noexcept { return names_.size(); }
    bool empty() const noexcept { return decisions_.empty(); }

    const std::vector<std::string>& attribute_names() const noexcept { return names_; }

    double value(std::size_t object, std::size_t attribute) const {
        return values_[object * names_.size() + attribute];
    }
    std::span<const double> row(std::size_t object) const {
        return {values_.data() + object * names_.size(), names_.size()};
    }
    Label decision(std::size_t object) const { return decisions_[object]; }
    const std::vector<Label>& decisions() const noexcept { return decisions_; }

    /// All values of one attribute, in object order.
    std::vector<double> column(std::size_t attribute) const;

    /// Number of objects carrying `label`.
    std::size_t count_label(Label label) const;

    /// True when both decision classes are present.
    bool has_both_classes() const { return count_label(0) > 0 && count_label(1) > 0; }

    /// Throws std::invalid_argument unless the table can be used for training.
    void require_trainable() const;

    /// New table holding the given objects, in the given order.
    DecisionTable subset(std::span<const std::size_t> objects) const;

    friend bool operator==(const DecisionTable&, const DecisionTable&) = default;

private:
    std::vector<std::string> names_;
    std::vector<double> values_;
    std::vector<Label> decisions_;
};

struct LoadResult {
    DecisionTable table;
    std::size_t dropped_count = 0;  // rows skipped for empty or non-numeric cells
};

/**
 * Reads a comma-separated decision table. The header names the condition
 * attributes; its last column must be literally "label".
 *
 * Rows with an empty or non-numeric condition cell are dropped and counted.
 * Throws std::runtime_error for an unreadable file, a header without "label",
 * a row with the wrong number of fields, a label outside {0,1}, or when no
 * rows survive.
 */
LoadResult load_csv(const std::filesystem::path& path);
LoadResult read_csv(std::istream& in);

/// Writes values in shortest round-trip form so load_csv restores them exactly.
void write_csv(const DecisionTable& table, std::ostream& out);
void write_csv(const DecisionTable& table, const std::filesystem::path& path);

struct SplitSpec {
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
};

struct SplitResult {
    DecisionTable train;
    DecisionTable test;
    std::size_t attempts = 1;  // shuffles needed before both sides held both classes
};

inline constexpr std::size_t kMaxSplitAttempts = 100;

/**
 * Shuffled train/test split. The train side receives
 * round(train_fraction * n) objects. Deterministic for a fixed seed. When a
 * shuffle leaves either side with a single decision class the objects are
 * reshuffled, up to kMaxSplitAttempts times, before giving up with
 * std::runtime_error.
 */
SplitResult split(const DecisionTable& table, const SplitSpec& spec);

/// Clips every attribute to its [lower_pct, upper_pct] percentile range.
DecisionTable clip_outliers(const DecisionTable& table, double lower_pct = 0.5,
                            double upper_pct = 99.5);

}  // namespace rsaco

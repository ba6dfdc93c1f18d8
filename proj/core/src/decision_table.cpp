#include "rsaco/decision_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rsaco {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

double nearest_rank(const std::vector<double>& sorted, double pct) {
    const auto n = static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * n));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

}  // namespace

DecisionTable::DecisionTable(std::vector<std::string> attribute_names,
                             std::vector<double> values_row_major,
                             std::vector<Label> decisions)
    : names_(std::move(attribute_names)),
      values_(std::move(values_row_major)),
      decisions_(std::move(decisions)) {
    if (names_.empty()) throw std::invalid_argument("decision table needs at least one attribute");
    if (values_.size() != decisions_.size() * names_.size()) {
        throw std::invalid_argument("decision table: every row needs exactly " +
                                    std::to_string(names_.size()) + " condition values");
    }
    for (auto v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("decision table: non-finite value");
    }
    for (auto d : decisions_) {
        if (d > 1) throw std::invalid_argument("decision table: label outside {0,1}");
    }
}

std::vector<double> DecisionTable::column(std::size_t attribute) const {
    std::vector<double> out(num_objects());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = value(i, attribute);
    return out;
}

std::size_t DecisionTable::count_label(Label label) const {
    return static_cast<std::size_t>(std::count(decisions_.begin(), decisions_.end(), label));
}

void DecisionTable::require_trainable() const {
    if (empty()) throw std::invalid_argument("training table is empty");
    if (!has_both_classes()) {
        throw std::invalid_argument("training table must contain both decision classes");
    }
}

DecisionTable DecisionTable::subset(std::span<const std::size_t> objects) const {
    std::vector<double> values;
    values.reserve(objects.size() * num_attributes());
    std::vector<Label> decisions;
    decisions.reserve(objects.size());
    for (auto i : objects) {
        auto r = row(i);
        values.insert(values.end(), r.begin(), r.end());
        decisions.push_back(decisions_[i]);
    }
    return DecisionTable(names_, std::move(values), std::move(decisions));
}

LoadResult read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: missing header row");
    auto header = split_fields(line);
    if (header.size() < 2 || trim(header.back()) != "label") {
        throw std::runtime_error("csv: last header column must be \"label\"");
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i + 1 < header.size(); ++i) names.emplace_back(trim(header[i]));

    const std::size_t width = names.size();
    std::vector<double> values;
    std::vector<Label> decisions;
    std::size_t dropped = 0;
    std::size_t line_no = 1;
    std::vector<double> row(width);

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != width + 1) {
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(width + 1) + " fields, got " +
                                     std::to_string(fields.size()));
        }
        auto label_text = trim(fields.back());
        if (label_text != "0" && label_text != "1") {
            throw std::runtime_error("csv line " + std::to_string(line_no) +
                                     ": label outside {0,1}");
        }
        bool ok = true;
        for (std::size_t a = 0; a < width && ok; ++a) ok = parse_double(fields[a], row[a]);
        if (!ok) {
            ++dropped;
            continue;
        }
        values.insert(values.end(), row.begin(), row.end());
        decisions.push_back(label_text == "1" ? 1 : 0);
    }
    if (decisions.empty()) throw std::runtime_error("csv: no usable rows");
    return {DecisionTable(std::move(names), std::move(values), std::move(decisions)), dropped};
}

LoadResult load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_csv(in);
}

void write_csv(const DecisionTable& table, std::ostream& out) {
    const auto& names = table.attribute_names();
    for (const auto& n : names) out << n << ',';
    out << "label\n";
    char buf[64];
    for (std::size_t i = 0; i < table.num_objects(); ++i) {
        for (double v : table.row(i)) {
            auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
            out.write(buf, end - buf);
            out << ',';
        }
        out << static_cast<int>(table.decision(i)) << '\n';
    }
}

void write_csv(const DecisionTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_csv(table, out);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

SplitResult split(const DecisionTable& table, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw std::invalid_argument("train_fraction must lie in (0,1)");
    }
    if (table.count_label(0) < 2 || table.count_label(1) < 2) {
        throw std::invalid_argument("split needs at least two objects of each class");
    }
    const std::size_t n = table.num_objects();
    const auto n_train = static_cast<std::size_t>(std::llround(spec.train_fraction * n));
    if (n_train < 2 || n - n_train < 2) {
        throw std::runtime_error("split leaves fewer than two objects on one side");
    }

    std::mt19937_64 rng(spec.seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    for (std::size_t attempt = 1; attempt <= kMaxSplitAttempts; ++attempt) {
        std::shuffle(order.begin(), order.end(), rng);
        std::span<const std::size_t> all(order);
        auto train = table.subset(all.first(n_train));
        auto test = table.subset(all.subspan(n_train));
        if (train.has_both_classes() && test.has_both_classes()) {
            return {std::move(train), std::move(test), attempt};
        }
    }
    throw std::runtime_error("split: no shuffle gave both classes on both sides after " +
                             std::to_string(kMaxSplitAttempts) + " attempts");
}

DecisionTable clip_outliers(const DecisionTable& table, double lower_pct, double upper_pct) {
    if (!(0.0 <= lower_pct && lower_pct < upper_pct && upper_pct <= 100.0)) {
        throw std::invalid_argument("clip_outliers: bad percentile range");
    }
    if (table.empty()) return table;
    const std::size_t width = table.num_attributes();
    std::vector<double> lo(width), hi(width);
    for (std::size_t a = 0; a < width; ++a) {
        auto col = table.column(a);
        std::sort(col.begin(), col.end());
        lo[a] = nearest_rank(col, lower_pct);
        hi[a] = nearest_rank(col, upper_pct);
    }
    std::vector<double> values;
    values.reserve(table.num_objects() * width);
    for (std::size_t i = 0; i < table.num_objects(); ++i) {
        for (std::size_t a = 0; a < width; ++a) {
            values.push_back(std::clamp(table.value(i, a), lo[a], hi[a]));
        }
    }
    return DecisionTable(table.attribute_names(), std::move(values), table.decisions());
}

}  // namespace rsaco

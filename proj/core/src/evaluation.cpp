#include "rsaco/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace rsaco {

ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> actuals) {
    if (predictions.size() != actuals.size()) {
        throw std::invalid_argument("confusion: predictions and actuals differ in length");
    }
    if (predictions.empty()) throw std::invalid_argument("confusion: no objects");
    ConfusionMatrix m;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const bool pred = predictions[i] == 1;
        const bool act = actuals[i] == 1;
        if (pred && act) ++m.tp;
        else if (!pred && !act) ++m.tn;
        else if (pred) ++m.fp;
        else ++m.fn;
    }
    return m;
}

double accuracy(const ConfusionMatrix& m) {
    if (m.total() == 0) throw std::invalid_argument("accuracy: empty confusion matrix");
    return static_cast<double>(m.tp + m.tn) / static_cast<double>(m.total());
}

RocCurve roc(std::span<const double> scores, std::span<const Label> actuals) {
    if (scores.size() != actuals.size()) {
        throw std::invalid_argument("roc: scores and actuals differ in length");
    }
    const auto positives =
        static_cast<std::size_t>(std::count(actuals.begin(), actuals.end(), Label{1}));
    const std::size_t negatives = actuals.size() - positives;
    if (positives == 0 || negatives == 0) {
        throw std::invalid_argument("roc: both classes must be present");
    }

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    curve.thresholds.push_back(std::numeric_limits<double>::infinity());
    std::size_t tp = 0, fp = 0;
    for (std::size_t k = 0; k < order.size();) {
        const double threshold = scores[order[k]];
        while (k < order.size() && scores[order[k]] == threshold) {
            if (actuals[order[k]] == 1) ++tp;
            else ++fp;
            ++k;
        }
        curve.points.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                                static_cast<double>(tp) / static_cast<double>(positives)});
        curve.thresholds.push_back(threshold);
    }
    return curve;
}

double auc(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    return area;
}

void write_roc_csv(const RocCurve& curve, std::ostream& out) {
    out << "threshold,fpr,tpr\n";
    const auto old_precision = out.precision(17);
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        out << curve.thresholds[i] << ',' << curve.points[i].fpr << ',' << curve.points[i].tpr
            << '\n';
    }
    out.precision(old_precision);
}

std::string to_json(const EvaluationReport& r) {
    nlohmann::ordered_json j = {
        {"confusion", {{"tp", r.matrix.tp}, {"tn", r.matrix.tn}, {"fp", r.matrix.fp}, {"fn", r.matrix.fn}}},
        {"accuracy", r.accuracy},
        {"auc", r.auc},
        {"num_rules", r.num_rules},
        {"num_certain_rules", r.num_certain_rules},
        {"train_time_s", r.train_time_s},
        {"test_time_s", r.test_time_s},
    };
    return j.dump(2);
}

PipelineResult evaluate_pipeline(const DecisionTable& train, const DecisionTable& test,
                                 const CutSet& cuts, double cut_search_seconds) {
    using Clock = std::chrono::steady_clock;
    train.require_trainable();
    if (test.empty()) throw std::invalid_argument("evaluate_pipeline: empty test table");

    PipelineResult result;
    const auto train_start = Clock::now();
    const auto train_bins = apply_cuts(train, cuts);
    result.rules = induce_rules(train_bins, train.attribute_names());
    const auto train_end = Clock::now();

    const auto test_bins = apply_cuts(test, cuts);
    result.predictions.resize(test.num_objects());
    result.scores.resize(test.num_objects());
    for (std::size_t i = 0; i < test.num_objects(); ++i) {
        const auto c = result.rules.classify(test_bins.row(i));
        result.predictions[i] = c.decision;
        result.scores[i] = c.score;
    }
    const auto test_end = Clock::now();

    auto& rep = result.report;
    rep.matrix = confusion(result.predictions, test.decisions());
    rep.accuracy = accuracy(rep.matrix);
    rep.num_rules = result.rules.size();
    rep.num_certain_rules = result.rules.num_certain();
    rep.train_time_s =
        std::chrono::duration<double>(train_end - train_start).count() + cut_search_seconds;
    rep.test_time_s = std::chrono::duration<double>(test_end - train_end).count();
    result.curve = roc(result.scores, test.decisions());
    rep.auc = auc(result.curve);
    return result;
}

}  // namespace rsaco

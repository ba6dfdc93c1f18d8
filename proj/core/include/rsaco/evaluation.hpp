#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rsaco/decision_table.hpp"
#include "rsaco/discretization.hpp"
#include "rsaco/rough_set.hpp"

namespace rsaco {

/// Positive class is label 1 (faulty).
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    std::size_t total() const noexcept { return tp + tn + fp + fn; }
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Throws std::invalid_argument on empty input or a length mismatch.
ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> actuals);

/// (tp + tn) / total. Throws std::invalid_argument for an empty matrix.
double accuracy(const ConfusionMatrix& m);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

/// Points ascend in FPR from (0,0) to (1,1). thresholds[i] is the score cutoff
/// (predict 1 when score >= cutoff) giving points[i]; the first is +infinity.
struct RocCurve {
    std::vector<RocPoint> points;
    std::vector<double> thresholds;
};

/// Threshold sweep over the distinct scores, highest first; tied scores move
/// the curve in a single step. Throws std::invalid_argument unless both
/// classes occur in `actuals`.
RocCurve roc(std::span<const double> scores, std::span<const Label> actuals);

/// Trapezoidal area under the curve.
double auc(const RocCurve& curve);

/// CSV with header threshold,fpr,tpr.
void write_roc_csv(const RocCurve& curve, std::ostream& out);

struct EvaluationReport {
    ConfusionMatrix matrix;
    double accuracy = 0.0;
    double auc = 0.0;
    std::size_t num_rules = 0;
    std::size_t num_certain_rules = 0;
    double train_time_s = 0.0;
    double test_time_s = 0.0;
};

std::string to_json(const EvaluationReport& report);

struct PipelineResult {
    EvaluationReport report;
    RuleSet rules;
    RocCurve curve;
    std::vector<Label> predictions;
    std::vector<double> scores;
};

/**
 * Discretizes both tables with `cuts`, induces rules on train and classifies
 * test, which must hold both classes. Train time covers discretizing train plus rule induction, plus
 * `cut_search_seconds` supplied by the caller for however the cuts were
 * found. Test time covers discretizing and classifying the test table.
 */
PipelineResult evaluate_pipeline(const DecisionTable& train, const DecisionTable& test,
                                 const CutSet& cuts, double cut_search_seconds = 0.0);

}  // namespace rsaco

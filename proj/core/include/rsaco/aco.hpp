#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rsaco/decision_table.hpp"
#include "rsaco/discretization.hpp"

namespace rsaco {

using Rng = std::mt19937_64;

/// Candidate cut positions are the integer percentiles 1..99.
inline constexpr std::size_t kNumPositions = 99;

enum class Attractiveness {
    uniform,  // eta = 1 everywhere; beta has no effect
    purity,   // eta from the single-attribute class-purity gain of each candidate cut
};

struct AcoParams {
    std::size_t num_ants = 10;
    std::size_t num_iterations = 100;
    double alpha = 0.09;  // pheromone exponent
    double beta = 0.09;   // attractiveness exponent
    double rho = 0.9;     // evaporation constant
    double q_deposit = 1.0;
    std::size_t num_cuts = 2;
    std::uint64_t seed = 0;

    double tau_initial = 1.0;
    double tau_floor = 1e-6;
    double cost_floor = 1e-3;  // Q / max(cost, cost_floor) keeps deposits finite
    double validation_fraction = 0.2;
    Attractiveness attractiveness = Attractiveness::uniform;
    std::size_t workers = 1;  // 0 selects std::thread::hardware_concurrency()

    /// Throws std::invalid_argument for out-of-range settings.
    void validate() const;
};

/// tau and eta over (attribute, percentile position). Position p lives at index p - 1.
class PheromoneModel {
public:
    PheromoneModel() = default;
    PheromoneModel(std::size_t num_attributes, double tau_initial, double eta_initial = 1.0);

    std::size_t num_attributes() const noexcept { return num_attributes_; }

    std::span<const double> tau(std::size_t attribute) const {
        return {tau_.data() + attribute * kNumPositions, kNumPositions};
    }
    std::span<double> tau(std::size_t attribute) {
        return {tau_.data() + attribute * kNumPositions, kNumPositions};
    }
    std::span<const double> eta(std::size_t attribute) const {
        return {eta_.data() + attribute * kNumPositions, kNumPositions};
    }
    std::span<double> eta(std::size_t attribute) {
        return {eta_.data() + attribute * kNumPositions, kNumPositions};
    }

    double tau_at(std::size_t attribute, int position) const {
        return tau_[attribute * kNumPositions + static_cast<std::size_t>(position - 1)];
    }

    friend bool operator==(const PheromoneModel&, const PheromoneModel&) = default;

private:
    std::size_t num_attributes_ = 0;
    std::vector<double> tau_;
    std::vector<double> eta_;
};

/// One ant's path: ascending percentile positions per attribute, and the cut
/// values they realize on the fitting data.
struct AntSolution {
    std::vector<std::vector<int>> percentiles;
    CutSet cuts;
    double cost = std::numeric_limits<double>::quiet_NaN();

    bool evaluated() const noexcept { return !std::isnan(cost); }
};

/// Inclusive index range of the rows an ant may still pick.
struct FeasibleRange {
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t size() const noexcept { return last - first + 1; }
};

/// tau^alpha * eta^beta normalized over the feasible range (zero elsewhere).
std::vector<double> selection_probabilities(std::span<const double> tau_row,
                                            std::span<const double> eta_row,
                                            FeasibleRange feasible, double alpha, double beta);

/// Draws one index from the feasible range with the probabilities above.
std::size_t select_next(std::span<const double> tau_row, std::span<const double> eta_row,
                        FeasibleRange feasible, double alpha, double beta, Rng& rng);

/**
 * Converts percentile positions to cuts on `grid`. Equal cut values collapse to
 * one and a cut at the attribute minimum is dropped, since it would leave the
 * lowest bin empty.
 */
CutSet realize_cuts(const std::vector<std::vector<int>>& percentiles, const PercentileGrid& grid,
                    const std::vector<std::string>& attribute_names);

/**
 * Builds one ant's path. Every attribute starts at the range minimum, then
 * num_cuts positions are drawn in sequence; after picking p the next draw is
 * restricted to positions above p, and the range top is held back so all
 * num_cuts picks fit below 100.
 */
AntSolution construct_solution(const PheromoneModel& model, const AcoParams& params,
                               const PercentileGrid& grid,
                               const std::vector<std::string>& attribute_names, Rng& rng);

/// Misclassification rate on `validation` of rules induced from `fit` with the solution's cuts.
double evaluate_solution(const AntSolution& solution, const DecisionTable& fit,
                         const DecisionTable& validation);

/// Evaporation then deposit: tau <- (1 - rho) tau + sum_k Q / cost_k over the
/// ants that picked the position, floored at tau_floor.
PheromoneModel update_pheromones(const PheromoneModel& model,
                                 std::span<const AntSolution> solutions, const AcoParams& params);

/// Purity-gain attractiveness for every (attribute, position) on the fitting data.
PheromoneModel with_purity_attractiveness(PheromoneModel model, const DecisionTable& fit,
                                          const PercentileGrid& grid);

struct IterationStats {
    std::size_t iteration = 0;  // 1-based
    double iteration_best = 0.0;
    double best_cost = 0.0;  // running best over all iterations so far
    double mean_cost = 0.0;
};

struct AcoResult {
    AntSolution best;
    std::vector<IterationStats> history;
    PheromoneModel final_model;
};

/// Fit/validation split used as the search objective's data.
SplitResult search_split(const DecisionTable& train, const AcoParams& params);

using IterationCallback = std::function<void(const IterationStats&)>;

/**
 * Searches cut positions that minimize rough-set classification error.
 *
 * `train` is split into fit and validation parts (search_split); every ant's
 * cuts are realized on the fit part, rules are induced there and scored on
 * validation. The least-cost solution over all iterations is returned, the
 * earliest one on ties. Ants within an iteration run on up to params.workers
 * threads; per-ant random streams are derived from (seed, iteration, ant) so
 * the result does not depend on the worker count.
 */
AcoResult optimize(const DecisionTable& train, const AcoParams& params,
                   const IterationCallback& on_iteration = {});

/// CSV with header iteration,best_cost,mean_cost.
void write_convergence_csv(std::span<const IterationStats> history, std::ostream& out);

}  // namespace rsaco

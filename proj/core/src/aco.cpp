#include "rsaco/aco.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "rsaco/rough_set.hpp"

namespace rsaco {

void AcoParams::validate() const {
    if (num_ants == 0) throw std::invalid_argument("aco: at least one ant required");
    if (num_iterations == 0) throw std::invalid_argument("aco: at least one iteration required");
    if (num_cuts == 0 || num_cuts > kNumPositions) {
        throw std::invalid_argument("aco: num_cuts must lie in [1, 99]");
    }
    if (!(alpha >= 0.0) || !(beta >= 0.0)) throw std::invalid_argument("aco: alpha, beta >= 0");
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("aco: rho must lie in [0,1]");
    if (!(q_deposit > 0.0)) throw std::invalid_argument("aco: q_deposit must be positive");
    if (!(tau_initial > 0.0) || !(tau_floor > 0.0) || !(cost_floor > 0.0)) {
        throw std::invalid_argument("aco: tau_initial, tau_floor and cost_floor must be positive");
    }
    if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
        throw std::invalid_argument("aco: validation_fraction must lie in (0,1)");
    }
}

PheromoneModel::PheromoneModel(std::size_t num_attributes, double tau_initial, double eta_initial)
    : num_attributes_(num_attributes),
      tau_(num_attributes * kNumPositions, tau_initial),
      eta_(num_attributes * kNumPositions, eta_initial) {}

std::vector<double> selection_probabilities(std::span<const double> tau_row,
                                            std::span<const double> eta_row,
                                            FeasibleRange feasible, double alpha, double beta) {
    if (feasible.first > feasible.last || feasible.last >= tau_row.size() ||
        eta_row.size() != tau_row.size()) {
        throw std::invalid_argument("selection: feasible range outside the rows");
    }
    std::vector<double> p(tau_row.size(), 0.0);
    double total = 0.0;
    for (std::size_t j = feasible.first; j <= feasible.last; ++j) {
        p[j] = std::pow(tau_row[j], alpha) * std::pow(eta_row[j], beta);
        total += p[j];
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw std::domain_error("selection: weights vanish over the feasible range");
    }
    for (std::size_t j = feasible.first; j <= feasible.last; ++j) p[j] /= total;
    return p;
}

std::size_t select_next(std::span<const double> tau_row, std::span<const double> eta_row,
                        FeasibleRange feasible, double alpha, double beta, Rng& rng) {
    const auto p = selection_probabilities(tau_row, eta_row, feasible, alpha, beta);
    if (feasible.size() == 1) return feasible.first;
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double acc = 0.0;
    for (std::size_t j = feasible.first; j < feasible.last; ++j) {
        acc += p[j];
        if (u < acc) return j;
    }
    return feasible.last;
}

CutSet realize_cuts(const std::vector<std::vector<int>>& percentiles, const PercentileGrid& grid,
                    const std::vector<std::string>& attribute_names) {
    if (percentiles.size() != grid.num_attributes()) {
        throw std::invalid_argument("realize_cuts: one percentile list per attribute required");
    }
    std::vector<std::vector<double>> cuts(percentiles.size());
    for (std::size_t a = 0; a < percentiles.size(); ++a) {
        for (int p : percentiles[a]) {
            const double v = grid.value(a, p);
            if (v <= grid.min(a)) continue;
            if (!cuts[a].empty() && cuts[a].back() >= v) continue;
            cuts[a].push_back(v);
        }
    }
    return CutSet(attribute_names, std::move(cuts));
}

AntSolution construct_solution(const PheromoneModel& model, const AcoParams& params,
                               const PercentileGrid& grid,
                               const std::vector<std::string>& attribute_names, Rng& rng) {
    if (params.num_cuts == 0 || params.num_cuts > kNumPositions) {
        throw std::invalid_argument("construct_solution: num_cuts must lie in [1, 99]");
    }
    if (model.num_attributes() != grid.num_attributes()) {
        throw std::invalid_argument("construct_solution: model and data attribute counts differ");
    }
    AntSolution ant;
    ant.percentiles.resize(model.num_attributes());
    for (std::size_t a = 0; a < model.num_attributes(); ++a) {
        auto& path = ant.percentiles[a];
        std::size_t next_first = 0;  // index of position 1; the start node is the minimum
        for (std::size_t s = 0; s < params.num_cuts; ++s) {
            const FeasibleRange range{next_first, kNumPositions - params.num_cuts + s};
            const auto idx =
                select_next(model.tau(a), model.eta(a), range, params.alpha, params.beta, rng);
            path.push_back(static_cast<int>(idx) + 1);
            next_first = idx + 1;
        }
    }
    ant.cuts = realize_cuts(ant.percentiles, grid, attribute_names);
    return ant;
}

double evaluate_solution(const AntSolution& solution, const DecisionTable& fit,
                         const DecisionTable& validation) {
    if (validation.empty()) throw std::invalid_argument("evaluate_solution: empty validation");
    const auto rules = induce_rules(apply_cuts(fit, solution.cuts));
    const auto bins = apply_cuts(validation, solution.cuts);
    std::size_t errors = 0;
    for (std::size_t i = 0; i < validation.num_objects(); ++i) {
        if (rules.classify(bins.row(i)).decision != validation.decision(i)) ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(validation.num_objects());
}

PheromoneModel update_pheromones(const PheromoneModel& model,
                                 std::span<const AntSolution> solutions, const AcoParams& params) {
    PheromoneModel next = model;
    for (std::size_t a = 0; a < next.num_attributes(); ++a) {
        for (double& t : next.tau(a)) t *= (1.0 - params.rho);
    }
    for (const auto& ant : solutions) {
        if (!ant.evaluated()) throw std::invalid_argument("update_pheromones: unevaluated ant");
        if (ant.percentiles.size() != next.num_attributes()) {
            throw std::invalid_argument("update_pheromones: ant path has wrong attribute count");
        }
        const double deposit = params.q_deposit / std::max(ant.cost, params.cost_floor);
        for (std::size_t a = 0; a < ant.percentiles.size(); ++a) {
            auto row = next.tau(a);
            for (int p : ant.percentiles[a]) row[static_cast<std::size_t>(p - 1)] += deposit;
        }
    }
    for (std::size_t a = 0; a < next.num_attributes(); ++a) {
        for (double& t : next.tau(a)) t = std::max(t, params.tau_floor);
    }
    return next;
}

namespace {

std::size_t majority_count(std::size_t ones, std::size_t total) {
    return std::max(ones, total - ones);
}

}  // namespace

PheromoneModel with_purity_attractiveness(PheromoneModel model, const DecisionTable& fit,
                                          const PercentileGrid& grid) {
    constexpr double kEtaBase = 1e-3;
    const std::size_t n = fit.num_objects();
    const std::size_t total_ones = fit.count_label(1);
    const double baseline = static_cast<double>(majority_count(total_ones, n));

    for (std::size_t a = 0; a < fit.num_attributes(); ++a) {
        // Objects sorted by value with a running count of label 1.
        std::vector<std::pair<double, Label>> sorted(n);
        for (std::size_t i = 0; i < n; ++i) sorted[i] = {fit.value(i, a), fit.decision(i)};
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::size_t> ones_below(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) ones_below[i + 1] = ones_below[i] + sorted[i].second;

        auto eta = model.eta(a);
        for (int p = kMinPercentile; p <= kMaxPercentile; ++p) {
            const double cut = grid.value(a, p);
            const auto below = static_cast<std::size_t>(
                std::lower_bound(sorted.begin(), sorted.end(), std::pair<double, Label>{cut, 0}) -
                sorted.begin());
            const std::size_t left_ones = ones_below[below];
            const double split_correct =
                static_cast<double>(majority_count(left_ones, below) +
                                    majority_count(total_ones - left_ones, n - below));
            eta[static_cast<std::size_t>(p - 1)] =
                kEtaBase + (split_correct - baseline) / static_cast<double>(n);
        }
    }
    return model;
}

SplitResult search_split(const DecisionTable& train, const AcoParams& params) {
    return split(train, SplitSpec{1.0 - params.validation_fraction, params.seed});
}

namespace {

Rng ant_rng(std::uint64_t seed, std::size_t iteration, std::size_t ant) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(iteration), static_cast<std::uint32_t>(ant)};
    return Rng(seq);
}

template <class Fn>
void run_indexed(std::size_t count, std::size_t workers, Fn&& fn) {
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < count; i = next++) fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

AcoResult optimize(const DecisionTable& train, const AcoParams& params,
                   const IterationCallback& on_iteration) {
    params.validate();
    train.require_trainable();
    const auto data = search_split(train, params);
    const PercentileGrid grid(data.train);
    const auto& names = train.attribute_names();

    std::size_t workers = params.workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

    PheromoneModel model(train.num_attributes(), params.tau_initial);
    if (params.attractiveness == Attractiveness::purity) {
        model = with_purity_attractiveness(std::move(model), data.train, grid);
    }

    AcoResult result;
    result.history.reserve(params.num_iterations);
    std::vector<AntSolution> ants(params.num_ants);

    for (std::size_t it = 1; it <= params.num_iterations; ++it) {
        run_indexed(params.num_ants, workers, [&](std::size_t k) {
            auto rng = ant_rng(params.seed, it, k);
            ants[k] = construct_solution(model, params, grid, names, rng);
            ants[k].cost = evaluate_solution(ants[k], data.train, data.test);
        });

        IterationStats stats;
        stats.iteration = it;
        stats.iteration_best = ants.front().cost;
        double sum = 0.0;
        for (const auto& ant : ants) {
            sum += ant.cost;
            stats.iteration_best = std::min(stats.iteration_best, ant.cost);
            if (!result.best.evaluated() || ant.cost < result.best.cost) result.best = ant;
        }
        stats.best_cost = result.best.cost;
        stats.mean_cost = sum / static_cast<double>(ants.size());
        result.history.push_back(stats);
        if (on_iteration) on_iteration(stats);

        model = update_pheromones(model, ants, params);
    }
    result.final_model = std::move(model);
    return result;
}

void write_convergence_csv(std::span<const IterationStats> history, std::ostream& out) {
    out << "iteration,best_cost,mean_cost\n";
    const auto old_precision = out.precision(17);
    for (const auto& s : history) {
        out << s.iteration << ',' << s.best_cost << ',' << s.mean_cost << '\n';
    }
    out.precision(old_precision);
}

}  // namespace rsaco

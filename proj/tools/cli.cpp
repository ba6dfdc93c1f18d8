#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsaco/discretization.hpp"
#include "rsaco/rough_set.hpp"
#include "rsaco/synth_dga.hpp"

#ifndef RSACO_DEFAULT_PROFILE
#define RSACO_DEFAULT_PROFILE "config/dga_profile.json"
#endif

namespace rsaco::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string to_string(Discretizer d) { return d == Discretizer::efb ? "efb" : "aco"; }

fs::path default_profile_path() { return RSACO_DEFAULT_PROFILE; }

namespace {

/// Files written by one command; removed again unless commit() is reached.
class OutputFiles {
public:
    explicit OutputFiles(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }
    OutputFiles(const OutputFiles&) = delete;
    OutputFiles& operator=(const OutputFiles&) = delete;
    ~OutputFiles() {
        if (committed_) return;
        std::error_code ec;
        for (const auto& p : written_) fs::remove(p, ec);
    }

    template <class Writer>
    void write(const std::string& name, Writer&& writer) {
        const auto path = dir_ / name;
        written_.push_back(path);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        writer(out);
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + path.string());
    }

    void write_text(const std::string& name, const std::string& text) {
        write(name, [&](std::ostream& o) { o << text << '\n'; });
    }

    void adopt(const OutputFiles& child) {
        written_.insert(written_.end(), child.written_.begin(), child.written_.end());
    }
    void commit() { committed_ = true; }
    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
    bool committed_ = false;
};

DecisionTable load_data(const RunConfig& config, std::ostream& err) {
    DecisionTable table;
    if (config.data_path) {
        auto loaded = load_csv(*config.data_path);
        if (loaded.dropped_count > 0 && !config.quiet) {
            err << "dropped " << loaded.dropped_count << " rows with missing values\n";
        }
        table = std::move(loaded.table);
    } else {
        const auto profile = load_profile(config.profile_path.empty() ? default_profile_path()
                                                                      : config.profile_path);
        table = generate(profile, config.synth_n, config.split.seed);
    }
    if (config.clip_outliers) table = clip_outliers(table);
    return table;
}

struct ArmResult {
    Discretizer discretizer = Discretizer::efb;
    PipelineResult pipeline;
    CutSet cuts;
    std::vector<IterationStats> history;
};

ArmResult run_arm(Discretizer which, const SplitResult& data, const RunConfig& config,
                  std::ostream& err) {
    using Clock = std::chrono::steady_clock;
    ArmResult arm;
    arm.discretizer = which;
    const auto start = Clock::now();
    if (which == Discretizer::efb) {
        arm.cuts = efb_cuts(data.train, config.num_cuts);
    } else {
        auto params = config.aco;
        params.num_cuts = config.num_cuts;
        auto log = [&](const IterationStats& s) {
            if (config.quiet) return;
            err << "aco iteration " << s.iteration << " best_cost " << s.best_cost << '\n';
        };
        auto result = optimize(data.train, params, log);
        arm.cuts = std::move(result.best.cuts);
        arm.history = std::move(result.history);
    }
    const double search_s = std::chrono::duration<double>(Clock::now() - start).count();
    arm.pipeline = evaluate_pipeline(data.train, data.test, arm.cuts, search_s);
    return arm;
}

ordered_json report_json(const ArmResult& arm, std::uint64_t seed) {
    const auto& r = arm.pipeline.report;
    return {
        {"discretizer", to_string(arm.discretizer)},
        {"confusion", {{"tp", r.matrix.tp}, {"tn", r.matrix.tn}, {"fp", r.matrix.fp}, {"fn", r.matrix.fn}}},
        {"accuracy", r.accuracy},
        {"auc", r.auc},
        {"num_rules", r.num_rules},
        {"num_certain_rules", r.num_certain_rules},
        {"train_time_s", r.train_time_s},
        {"test_time_s", r.test_time_s},
        {"seed", seed},
        {"cuts_file", "cuts.json"},
    };
}

void write_arm(OutputFiles& files, const ArmResult& arm, std::uint64_t seed) {
    files.write_text("cuts.json", to_json(arm.cuts));
    files.write_text("rules.json", to_json(arm.pipeline.rules));
    files.write("roc.csv", [&](std::ostream& o) { write_roc_csv(arm.pipeline.curve, o); });
    if (arm.discretizer == Discretizer::aco) {
        files.write("convergence.csv",
                    [&](std::ostream& o) { write_convergence_csv(arm.history, o); });
    }
    files.write_text("report.json", report_json(arm, seed).dump(2));
}

std::string fixed(double v, int digits) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(digits) << v;
    return ss.str();
}

/// Confusion-matrix block per discretizer, actual rows (AP/AN) against predicted columns (PP/PN).
std::string comparison_table(const ArmResult& efb, const ArmResult& aco) {
    std::ostringstream out;
    auto block = [&](const char* title, const EvaluationReport& r) {
        out << title << '\n';
        out << std::left << std::setw(6) << "" << std::right << std::setw(8) << "PP"
            << std::setw(8) << "PN" << std::setw(8) << "AUC" << std::setw(12) << "# of Rules"
            << std::setw(16) << "Train Time(s)" << std::setw(15) << "Test Time(s)"
            << std::setw(10) << "Accuracy" << '\n';
        out << std::left << std::setw(6) << "AP" << std::right << std::setw(8) << r.matrix.tp
            << std::setw(8) << r.matrix.fn << std::setw(8) << fixed(r.auc, 3) << std::setw(12)
            << r.num_rules << std::setw(16) << fixed(r.train_time_s, 3) << std::setw(15)
            << fixed(r.test_time_s, 4) << std::setw(10) << fixed(r.accuracy, 4) << '\n';
        out << std::left << std::setw(6) << "AN" << std::right << std::setw(8) << r.matrix.fp
            << std::setw(8) << r.matrix.tn << '\n';
    };
    block("Equal Frequency Bin", efb.pipeline.report);
    block("Ant Colony Optimized", aco.pipeline.report);
    return out.str();
}

void print_summary(std::ostream& out, const ArmResult& arm, const fs::path& dir) {
    const auto& r = arm.pipeline.report;
    out << to_string(arm.discretizer) << ": accuracy " << fixed(r.accuracy, 4) << ", auc "
        << fixed(r.auc, 4) << ", rules " << r.num_rules << " (" << r.num_certain_rules
        << " certain), train " << fixed(r.train_time_s, 3) << " s -> " << dir.string() << '\n';
}

}  // namespace

int cmd_generate(const GenerateConfig& config, std::ostream& out) {
    if (config.n < kMinSyntheticObjects) {
        throw std::invalid_argument("--n must be at least " + std::to_string(kMinSyntheticObjects));
    }
    if (config.out_path.empty()) throw std::invalid_argument("--out is required");
    const auto profile = load_profile(config.profile_path.empty() ? default_profile_path()
                                                                  : config.profile_path);
    const auto table = generate(profile, config.n, config.seed);
    if (config.out_path.has_parent_path()) fs::create_directories(config.out_path.parent_path());
    try {
        write_csv(table, config.out_path);
    } catch (...) {
        std::error_code ec;
        fs::remove(config.out_path, ec);
        throw;
    }
    const auto faulty = table.count_label(1);
    out << "wrote " << table.num_objects() << " objects to " << config.out_path.string() << " ("
        << faulty << " faulty, " << table.num_objects() - faulty << " healthy)\n";
    return 0;
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto table = load_data(config, err);
    const auto data = split(table, config.split);
    const auto arm = run_arm(config.discretizer, data, config, err);

    OutputFiles files(config.output_dir);
    write_arm(files, arm, config.split.seed);
    files.commit();
    print_summary(out, arm, config.output_dir);
    return 0;
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto table = load_data(config, err);
    const auto data = split(table, config.split);
    const auto efb = run_arm(Discretizer::efb, data, config, err);
    const auto aco = run_arm(Discretizer::aco, data, config, err);

    OutputFiles files(config.output_dir);
    {
        OutputFiles efb_files(config.output_dir / "efb");
        write_arm(efb_files, efb, config.split.seed);
        files.adopt(efb_files);
        efb_files.commit();
    }
    {
        OutputFiles aco_files(config.output_dir / "aco");
        write_arm(aco_files, aco, config.split.seed);
        files.adopt(aco_files);
        aco_files.commit();
    }

    const auto& e = efb.pipeline.report;
    const auto& a = aco.pipeline.report;
    ordered_json compare = {
        {"seed", config.split.seed},
        {"train_objects", data.train.num_objects()},
        {"test_objects", data.test.num_objects()},
        {"efb", report_json(efb, config.split.seed)},
        {"aco", report_json(aco, config.split.seed)},
        {"deltas",
         {{"accuracy", a.accuracy - e.accuracy},
          {"auc", a.auc - e.auc},
          {"num_rules", static_cast<long long>(a.num_rules) - static_cast<long long>(e.num_rules)},
          {"train_time_s", a.train_time_s - e.train_time_s}}},
    };
    const auto table_text = comparison_table(efb, aco);
    files.write_text("compare.json", compare.dump(2));
    files.write("compare.txt", [&](std::ostream& o) { o << table_text; });
    files.commit();
    out << table_text;
    return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rough-set rule induction with EFB or ant-colony discretization"};
    app.require_subcommand(1);

    GenerateConfig gen;
    auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic nine-gas DGA table");
    generate_cmd->add_option("--n", gen.n, "Number of objects")->capture_default_str();
    generate_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    generate_cmd->add_option("--profile", gen.profile_path, "Gas profile JSON");
    generate_cmd->add_option("--out", gen.out_path, "Output CSV path")->required();

    RunConfig run;
    std::string discretizer = "efb";
    std::string eta_mode = "uniform";
    std::string data_path;
    auto add_shared = [&](CLI::App* cmd) {
        auto* data = cmd->add_option("--data", data_path, "Input CSV (last column \"label\")");
        auto* synth = cmd->add_option("--synth-n", run.synth_n, "Synthetic object count")
                          ->capture_default_str();
        data->excludes(synth);
        cmd->add_option("--profile", run.profile_path, "Gas profile JSON for synthetic data");
        cmd->add_flag("--clip-outliers", run.clip_outliers,
                      "Clip each attribute to its [0.5, 99.5] percentile range");
        cmd->add_option("--train-frac", run.split.train_fraction, "Training fraction")
            ->capture_default_str()
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--seed", run.split.seed, "Seed for data, split and search")
            ->capture_default_str();
        cmd->add_option("--out", run.output_dir, "Output directory")->capture_default_str();
        cmd->add_option("--cuts", run.num_cuts, "Cuts per attribute")
            ->capture_default_str()
            ->check(CLI::Range(1, 99));
        cmd->add_option("--workers", run.aco.workers, "Worker threads (0 = all cores)");
        cmd->add_option("--ants", run.aco.num_ants, "Ants per iteration")->capture_default_str();
        cmd->add_option("--iters", run.aco.num_iterations, "ACO iterations")->capture_default_str();
        cmd->add_option("--alpha", run.aco.alpha, "Pheromone exponent")->capture_default_str();
        cmd->add_option("--beta", run.aco.beta, "Attractiveness exponent")->capture_default_str();
        cmd->add_option("--rho", run.aco.rho, "Evaporation constant")->capture_default_str();
        cmd->add_option("--q", run.aco.q_deposit, "Deposit constant Q")->capture_default_str();
        cmd->add_option("--eta", eta_mode, "Attractiveness: uniform or purity")
            ->capture_default_str()
            ->check(CLI::IsMember({"uniform", "purity"}));
        cmd->add_flag("--quiet", run.quiet, "Suppress progress logging");
    };
    run.aco.workers = 0;

    auto* run_cmd = app.add_subcommand("run", "Train and evaluate one discretizer");
    add_shared(run_cmd);
    run_cmd->add_option("--discretizer", discretizer, "efb or aco")
        ->capture_default_str()
        ->check(CLI::IsMember({"efb", "aco"}));

    auto* compare_cmd = app.add_subcommand("compare", "Run EFB and ACO on one shared split");
    add_shared(compare_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (!data_path.empty()) run.data_path = data_path;
        run.aco.seed = run.split.seed;
        run.aco.num_cuts = run.num_cuts;
        run.aco.attractiveness =
            eta_mode == "purity" ? Attractiveness::purity : Attractiveness::uniform;
        run.discretizer = discretizer == "aco" ? Discretizer::aco : Discretizer::efb;

        if (generate_cmd->parsed()) return cmd_generate(gen, out);
        if (run_cmd->parsed()) return cmd_run(run, out, err);
        return cmd_compare(run, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace rsaco::cli

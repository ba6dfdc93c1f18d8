#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "rsaco/aco.hpp"
#include "rsaco/decision_table.hpp"
#include "rsaco/evaluation.hpp"

namespace rsaco::cli {

enum class Discretizer { efb, aco };

std::string to_string(Discretizer d);

struct GenerateConfig {
    std::size_t n = 2000;
    std::uint64_t seed = 1;
    std::filesystem::path profile_path;
    std::filesystem::path out_path;
};

struct RunConfig {
    std::optional<std::filesystem::path> data_path;  // else synthetic data
    std::size_t synth_n = 2000;
    std::filesystem::path profile_path;
    bool clip_outliers = false;
    SplitSpec split{0.7, 1};
    Discretizer discretizer = Discretizer::efb;
    std::size_t num_cuts = 2;
    AcoParams aco;
    std::filesystem::path output_dir = "rsaco_out";
    bool quiet = false;
};

/// Path of the profile shipped with the sources.
std::filesystem::path default_profile_path();

int cmd_generate(const GenerateConfig& config, std::ostream& out);
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses `rsaco <generate|run|compare> [flags]` and dispatches. Returns the exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rsaco::cli

#include "rsaco/synth_dga.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rsaco {

namespace {

void check_distribution(const GasDistribution& d, std::string_view gas) {
    if (!(d.median_ppm > 0.0) || !(d.log_spread > 0.0) || !std::isfinite(d.median_ppm) ||
        !std::isfinite(d.log_spread)) {
        throw std::invalid_argument("gas profile: non-positive parameter for " + std::string(gas));
    }
}

GasDistribution read_distribution(const nlohmann::json& j) {
    return {j.at("median_ppm").get<double>(), j.at("log_spread").get<double>()};
}

}  // namespace

void GasProfile::validate() const {
    if (!(fault_fraction > 0.0 && fault_fraction < 1.0)) {
        throw std::invalid_argument("gas profile: fault_fraction must lie in (0,1)");
    }
    for (double w : {fault_gas_loading, ambient_gas_loading}) {
        if (!(w >= 0.0 && w < 1.0)) {
            throw std::invalid_argument("gas profile: factor loadings must lie in [0,1)");
        }
    }
    for (std::size_t g = 0; g < kNumGases; ++g) {
        check_distribution(gases[g].healthy, kGasNames[g]);
        check_distribution(gases[g].faulty, kGasNames[g]);
        if (g >= kNumFaultGases && !(gases[g].healthy == gases[g].faulty)) {
            throw std::invalid_argument("gas profile: " + std::string(kGasNames[g]) +
                                        " is a non-fault gas and must not depend on the class");
        }
    }
}

GasProfile profile_from_json(std::string_view json) {
    GasProfile profile;
    try {
        const auto j = nlohmann::json::parse(json);
        profile.fault_fraction = j.at("fault_fraction").get<double>();
        profile.fault_gas_loading = j.value("fault_gas_loading", 0.0);
        profile.ambient_gas_loading = j.value("ambient_gas_loading", 0.0);
        const auto& gases = j.at("gases");
        for (std::size_t g = 0; g < kNumGases; ++g) {
            const auto& entry = gases.at(std::string(kGasNames[g]));
            profile.gases[g].healthy = read_distribution(entry.at("healthy"));
            profile.gases[g].faulty = read_distribution(entry.at("faulty"));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("gas profile: ") + e.what());
    }
    profile.validate();
    return profile;
}

GasProfile load_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return profile_from_json(ss.str());
}

DecisionTable generate(const GasProfile& profile, std::size_t n, std::uint64_t seed) {
    profile.validate();
    if (n < kMinSyntheticObjects) {
        throw std::invalid_argument("generate: at least " + std::to_string(kMinSyntheticObjects) +
                                    " objects required");
    }
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution is_fault(profile.fault_fraction);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<double> values;
    values.reserve(n * kNumGases);
    std::vector<Label> labels;
    labels.reserve(n);
    const double fault_w = profile.fault_gas_loading;
    const double ambient_w = profile.ambient_gas_loading;
    const double fault_own = std::sqrt(1.0 - fault_w * fault_w);
    const double ambient_own = std::sqrt(1.0 - ambient_w * ambient_w);

    for (std::size_t i = 0; i < n; ++i) {
        const Label label = is_fault(rng) ? 1 : 0;
        labels.push_back(label);
        const double fault_factor = normal(rng);
        const double ambient_factor = normal(rng);
        for (std::size_t g = 0; g < kNumGases; ++g) {
            const auto& d = label == 1 ? profile.gases[g].faulty : profile.gases[g].healthy;
            const double z = g < kNumFaultGases
                                 ? fault_w * fault_factor + fault_own * normal(rng)
                                 : ambient_w * ambient_factor + ambient_own * normal(rng);
            const double ppm = d.median_ppm * std::exp(d.log_spread * z);
            values.push_back(std::max(0.01, std::round(ppm * 100.0) / 100.0));
        }
    }
    return DecisionTable(std::vector<std::string>(kGasNames.begin(), kGasNames.end()),
                         std::move(values), std::move(labels));
}

}  // namespace rsaco

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "rsaco/decision_table.hpp"

namespace rsaco {

inline constexpr std::size_t kNumGases = 9;

/// Column order of generated tables. The first seven are fault gases.
inline constexpr std::array<std::string_view, kNumGases> kGasNames = {
    "h2", "ch4", "c2h4", "c2h6", "c2h2", "co", "co2", "n2", "o2"};

inline constexpr std::size_t kNumFaultGases = 7;

/// Log-normal draw: median in ppm, spread is the standard deviation of ln(value).
struct GasDistribution {
    double median_ppm = 1.0;
    double log_spread = 1.0;

    friend bool operator==(const GasDistribution&, const GasDistribution&) = default;
};

struct GasParams {
    GasDistribution healthy;
    GasDistribution faulty;
};

/**
 * Gases within a group co-vary through one shared standard-normal factor per
 * object: ln(value) = ln(median) + spread * (w z + sqrt(1 - w^2) e), where w is
 * the group's loading. The fault group holds the seven fault gases, the
 * ambient group n2 and o2.
 */
struct GasProfile {
    std::array<GasParams, kNumGases> gases{};
    double fault_fraction = 0.5;
    double fault_gas_loading = 0.0;
    double ambient_gas_loading = 0.0;

    /// Throws std::invalid_argument unless every parameter is positive, the
    /// fault fraction lies in (0,1), loadings lie in [0,1) and n2/o2 are
    /// identical across classes.
    void validate() const;
};

/**
 * Reads a profile of the form
 *   {"fault_fraction": 0.48, "fault_gas_loading": 0.9, "ambient_gas_loading": 0.5,
 *    "gases": {"h2": {"healthy": {"median_ppm": 40, "log_spread": 0.9},
 *                     "faulty":  {...}}, ...}}
 * Every gas in kGasNames must appear. The result is validated.
 */
GasProfile profile_from_json(std::string_view json);
GasProfile load_profile(const std::filesystem::path& path);

inline constexpr std::size_t kMinSyntheticObjects = 10;

/// Draws each object's class with P(fault) = fault_fraction, then the nine
/// gases from the class's log-normal distributions and group factors. Values
/// are rounded to 0.01 ppm and floored at 0.01. Deterministic per seed.
DecisionTable generate(const GasProfile& profile, std::size_t n, std::uint64_t seed);

}  // namespace rsaco

#ifndef MICROMARKET_CONFIG_HPP
#define MICROMARKET_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "micromarket/market_model.hpp"

namespace micromarket {

/// Config parse failures: unreadable file, malformed JSON, unknown or
/// mistyped keys. Distinct from validation failures on the parsed values.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    MicroParams params;
    std::size_t length = 1000;
    std::size_t burn_in = 100;
    std::vector<std::uint64_t> seeds;  // defaults to 1..30
    double significance = 0.01;
    std::string trajectory_csv = "trajectory.csv";
    std::string metadata_json;  // empty: derived from trajectory_csv
    std::string report_json = "stats_report.json";
    std::string sweep_csv = "sweep.csv";

    ExperimentConfig();

    /// Micro-param invariants plus length >= 1, distinct non-empty seeds and
    /// significance in (0, 1). Throws std::invalid_argument.
    void validate() const;
};

/// Strict parser: every key must be known and well-typed, unknown keys fail
/// loudly. `origin` names the source in error messages.
ExperimentConfig parse_config_json(const std::string& text, std::string_view origin);

ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace micromarket

#endif  // MICROMARKET_CONFIG_HPP

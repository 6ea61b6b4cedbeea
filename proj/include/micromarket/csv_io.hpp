#ifndef MICROMARKET_CSV_IO_HPP
#define MICROMARKET_CSV_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "micromarket/sim_engine.hpp"
#include "micromarket/stats.hpp"

namespace micromarket {

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input data; the message names the offending row.
class CsvFormatError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// 17 significant digits, enough for exact double round trips.
std::string format_full(double v);

/// Header t,x,eps,r,u,sigma,buy,sell,cond_mean; one row per kept step,
/// full-precision values, byte-deterministic for a fixed series.
void write_trajectory_csv(const std::filesystem::path& path,
                          const ReturnSeries& series);

/// JSON record of seed, RNG identifier, parameters, initial state and the
/// negative-volume / large-return counters.
void write_run_metadata(const std::filesystem::path& path,
                        const ReturnSeries& series);

/// Accepts a trajectory CSV (reads the r column) or a headerless
/// single-column file of returns.
std::vector<double> read_returns_csv(const std::filesystem::path& path);

/// Provenance of the analyzed returns, recorded in the report.
struct StatsSource {
    std::string description;
    bool simulated = false;  // when true, seed identifies the run
    std::uint64_t seed = 0;
};

void write_stats_report(const std::filesystem::path& path,
                        const StylizedFactsReport& report,
                        const StatsSource& source);

/// Human-readable table, one row per statistic.
std::string render_stats_table(const StylizedFactsReport& report);

void write_garch_map_report(const std::filesystem::path& path,
                            const MicroParams& params, const GarchParams& mapped,
                            double margin, const std::string& market_type);

/// Columns: axis_value, omega, alpha, beta, then the batch-median statistics.
void write_sweep_csv(const std::filesystem::path& path, const SweepReport& report);

/// JSON sidecar with the base parameters, seeds and RNG identifier behind a
/// sweep CSV.
void write_sweep_metadata(const std::filesystem::path& path,
                          const MicroParams& base, const SweepReport& report,
                          std::size_t length, std::size_t burn_in,
                          std::span<const std::uint64_t> seeds);

}  // namespace micromarket

#endif  // MICROMARKET_CSV_IO_HPP

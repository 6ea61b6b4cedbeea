#ifndef MICROMARKET_SIM_ENGINE_HPP
#define MICROMARKET_SIM_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "micromarket/garch.hpp"
#include "micromarket/market_model.hpp"

namespace micromarket {

inline constexpr std::size_t kDefaultBurnIn = 100;

/// Evolving per-step state of the market recursion.
struct MarketState {
    double x_prev = 0.0;
    double u_prev = 0.0;
    double sigma_prev = 0.0;
    std::size_t t = 0;
};

/// Everything recorded for one kept step. sigma is the conditional standard
/// deviation applicable to this step's return; u is this step's residual.
struct StepRecord {
    double x = 0.0;          // fundamental variable seen by the traders
    double eps_price = 0.0;  // pricing shock
    double eps_fund = 0.0;   // raw draw behind x (equal to x under the i.i.d. law)
    double r = 0.0;
    double u = 0.0;
    double sigma = 0.0;
    double buy = 0.0;
    double sell = 0.0;
    double cond_mean = 0.0;  // conditional mean of r given the previous step
};

struct ReturnSeries {
    std::vector<double> returns;
    std::vector<StepRecord> diagnostics;
    std::uint64_t seed = 0;
    MicroParams params;
    std::size_t burn_in = kDefaultBurnIn;
    // State entering the first kept step; with it the whole recursion can be
    // replayed from the diagnostics alone.
    double initial_u = 0.0;
    double initial_sigma = 0.0;
    std::size_t negative_volume_steps = 0;  // kept steps with buy < 0 or sell < 0
    std::size_t large_return_steps = 0;     // kept steps with |r| > 1

    std::size_t length() const { return returns.size(); }
};

/// Runs the market recursion for burn_in + length steps and keeps the last
/// `length`. Per step: draw x and eps, evaluate both trader utilities against
/// the previous state, price through the order-imbalance closed form, then
/// update the residual and conditional variance. Fully determined by
/// (params, length, seed, burn_in).
ReturnSeries simulate(const MicroParams& params, std::size_t length,
                      std::uint64_t seed, std::size_t burn_in = kDefaultBurnIn);

/// One independent simulate per seed, output in seed order. Seeds must be
/// non-empty and distinct. Runs are scheduled across worker threads; results
/// are identical to calling simulate sequentially.
std::vector<ReturnSeries> simulate_batch(const MicroParams& params,
                                         std::size_t length,
                                         std::span<const std::uint64_t> seeds,
                                         std::size_t burn_in = kDefaultBurnIn);

enum class SweepAxis { P1, P2, Lambda, Gamma, Rho, K };

const char* to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(std::string_view name);

/// Copy of base with the chosen axis replaced; does not validate.
MicroParams with_axis_value(const MicroParams& base, SweepAxis axis, double value);

struct SweepRow {
    double axis_value = 0.0;
    GarchParams mapped;  // micro_to_garch at x = u = sigma = 0
    double margin = 0.0;
    double median_skewness = 0.0;
    double median_kurtosis = 0.0;
    double median_ks = 0.0;
    double median_sq_autocorr1 = 0.0;
};

struct SweepReport {
    SweepAxis axis = SweepAxis::P1;
    std::vector<SweepRow> rows;
};

/// For each axis value: the state-free mapped parameters plus batch-median
/// stylized-fact statistics over the given seeds. Rejects any value that
/// produces invalid micro parameters.
SweepReport sweep(const MicroParams& base, SweepAxis axis,
                  std::span<const double> values, std::size_t length,
                  std::span<const std::uint64_t> seeds,
                  std::size_t burn_in = kDefaultBurnIn);

}  // namespace micromarket

#endif  // MICROMARKET_SIM_ENGINE_HPP

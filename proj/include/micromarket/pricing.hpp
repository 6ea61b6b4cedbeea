#ifndef MICROMARKET_PRICING_HPP
#define MICROMARKET_PRICING_HPP

#include "micromarket/market_model.hpp"

namespace micromarket {

/// Per-step order book totals. buy + sell always equals s_liquidity; the
/// imbalance terms cancel pairwise. Negative volumes are legal for extreme
/// utilities or shocks and are never clamped; the simulator counts them.
struct OrderVolumes {
    double buy = 0.0;
    double sell = 0.0;
};

/// Splits the constant order scale S across the book. Each side carries half
/// of S, shifted by the utility-weighted signal and by the liquidity-taking
/// response to the shock eps.
OrderVolumes order_volumes(UtilityValue u_fund, UtilityValue u_ai, double eps,
                           const MicroParams& params);

/// Order-imbalance return rho * (buy - sell) / (buy + sell). Rejects a zero
/// total; with volumes built by order_volumes the total is S > 0.
double step_return(const OrderVolumes& vols, const MicroParams& params);

/// Conditional mean of the step return, rho * (p1 * U + p2 * M).
double expected_step_return(UtilityValue u_fund, UtilityValue u_ai,
                            const MicroParams& params);

/// The same return with S eliminated:
///   rho * (p1 U + p2 M) + rho k (1 + p1 U + p2 M) * eps.
/// Agrees with step_return(order_volumes(...)) to rounding error.
double step_return_closed_form(UtilityValue u_fund, UtilityValue u_ai, double eps,
                               const MicroParams& params);

}  // namespace micromarket

#endif  // MICROMARKET_PRICING_HPP

#include "micromarket/pricing.hpp"

#include <stdexcept>

namespace micromarket {

namespace {

double signal_of(UtilityValue u_fund, UtilityValue u_ai, const MicroParams& p) {
    return p.p1 * u_fund.value + p.p2 * u_ai.value;
}

}  // namespace

OrderVolumes order_volumes(UtilityValue u_fund, UtilityValue u_ai, double eps,
                           const MicroParams& params) {
    const double signal = signal_of(u_fund, u_ai, params);
    const double half = 0.5 * params.s_liquidity;
    const double imbalance =
        half * signal + half * params.k * (1.0 + signal) * eps;
    return {half + imbalance, half - imbalance};
}

double step_return(const OrderVolumes& vols, const MicroParams& params) {
    const double total = vols.buy + vols.sell;
    if (total == 0.0) {
        throw std::domain_error("step_return: total order volume is zero");
    }
    return params.rho * (vols.buy - vols.sell) / total;
}

double expected_step_return(UtilityValue u_fund, UtilityValue u_ai,
                            const MicroParams& params) {
    return params.rho * signal_of(u_fund, u_ai, params);
}

double step_return_closed_form(UtilityValue u_fund, UtilityValue u_ai, double eps,
                               const MicroParams& params) {
    const double signal = signal_of(u_fund, u_ai, params);
    return params.rho * signal + params.rho * params.k * (1.0 + signal) * eps;
}

}  // namespace micromarket

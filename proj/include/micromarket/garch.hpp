#ifndef MICROMARKET_GARCH_HPP
#define MICROMARKET_GARCH_HPP

#include "micromarket/market_model.hpp"

namespace micromarket {

/// GARCH(1,1) parameter block. In the micro mapping omega and f_value are
/// state-dependent (they carry g(x), h(x), sigma, |u|), so a mapped block is
/// valid for one step; alpha and beta are state-free constants.
struct GarchParams {
    double omega = 0.0;    // constant variance term, > 0
    double f_value = 0.0;  // conditional mean at this step
    double alpha = 0.0;    // shock sensitivity, >= 0
    double beta = 0.0;     // volatility persistence, >= 0

    /// Throws std::invalid_argument unless omega > 0, alpha >= 0, beta >= 0
    /// and alpha + beta < 1 (strict, no epsilon slack).
    void validate() const;
};

struct GarchState {
    double u_prev = 0.0;
    double sigma2_prev = 0.0;  // >= 0
};

struct GarchStep {
    double r = 0.0;
    GarchState state;
};

/// One recursion step: sigma^2 = omega + alpha u^2 + beta sigma^2_prev,
/// u = sigma * eps, r = f_value + u.
GarchStep garch_step(const GarchParams& params, const GarchState& state, double eps);

/// Shock sensitivity rho^2 k^2 p2^2 gamma^2 implied by the micro model.
/// State-free and defined for any parameter values.
double micro_alpha(const MicroParams& params);

/// Volatility persistence rho^2 k^2 p1^2 lambda^2 implied by the micro model.
double micro_beta(const MicroParams& params);

/// 1 - (alpha + beta); positive exactly when the micro model maps onto a
/// stationary GARCH process.
double stationarity_margin(const MicroParams& params);

/// Maps the micro model onto per-step GARCH(1,1) parameters:
///   omega = rho^2 k^2 (1 + p1^2 g(x)^2 + p2^2 h(x)^2)
///   f     = rho (p1 (g(x) - lambda sigma) + p2 (h(x) - gamma |u|))
///   alpha = rho^2 k^2 p2^2 gamma^2,  beta = rho^2 k^2 p1^2 lambda^2
/// Rejects invalid params and negative sigma_prev.
GarchParams micro_to_garch(const MicroParams& params, double x_prev, double u_prev,
                           double sigma_prev);

/// Reduced mappings for markets missing one or both informed trader groups.
/// Each requires the corresponding ratio(s) to be exactly zero and agrees
/// component-wise with micro_to_garch at the same state.
GarchParams reduce_noise_only(const MicroParams& params);
GarchParams reduce_noise_fundamental(const MicroParams& params, double x_prev,
                                     double sigma_prev);
GarchParams reduce_noise_ai(const MicroParams& params, double x_prev, double u_prev);

}  // namespace micromarket

#endif  // MICROMARKET_GARCH_HPP

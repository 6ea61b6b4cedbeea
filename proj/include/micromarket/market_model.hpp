#ifndef MICROMARKET_MARKET_MODEL_HPP
#define MICROMARKET_MARKET_MODEL_HPP

#include <string_view>

namespace micromarket {

// Forecast functions are selected by tag so configs and run metadata can name
// them. The theory only needs g monotone and h trained under squared loss;
// the defaults are the log/AR pair used throughout the shipped configs.
enum class GFunction { ClampedLog, Linear };
enum class HFunction { Ar, Zero };

const char* to_string(GFunction g);
const char* to_string(HFunction h);
GFunction g_function_from_string(std::string_view name);
HFunction h_function_from_string(std::string_view name);

/// Full micro-model parameter set shared by the pricing, mapping, and
/// simulation layers.
struct MicroParams {
    double rho = 4.0;          // order-imbalance coefficient
    double k = 0.4;            // liquidity-taking intensity
    double s_liquidity = 1.0;  // total constant order scale S
    double p1 = 0.2;           // fundamental / noise trader ratio
    double p2 = 0.4;           // AI / noise trader ratio
    double lambda = 1.2;       // fundamental trader risk aversion
    double gamma = 1.2;        // AI trader risk aversion
    GFunction g_fn = GFunction::ClampedLog;
    HFunction h_fn = HFunction::Ar;

    /// Throws std::invalid_argument naming the violated inequality. Includes
    /// the stationarity requirement rho^2 k^2 (p1^2 lambda^2 + p2^2 gamma^2) < 1.
    void validate() const;
};

struct UtilityValue {
    double value = 0.0;
};

/// log(1 + max(-0.99, x)); the clamp keeps the left tail finite at log(0.01).
double g_log(double x);

/// AR(1)-style prediction, 0.1 * x.
double h_ar(double x);

double eval_g(GFunction g, double x);
double eval_h(HFunction h, double x);

/// Expected utility of the fundamental trader, g(x) - lambda * sigma.
/// Rejects negative sigma_prev.
UtilityValue fundamental_utility(double x_prev, double sigma_prev,
                                 const MicroParams& params);

/// Expected utility of the AI trader, h(x) - gamma * |u|; symmetric in the
/// sign of u_prev.
UtilityValue ai_utility(double x_prev, double u_prev, const MicroParams& params);

}  // namespace micromarket

#endif  // MICROMARKET_MARKET_MODEL_HPP

#include "micromarket/market_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace micromarket {

const char* to_string(GFunction g) {
    switch (g) {
        case GFunction::ClampedLog: return "log";
        case GFunction::Linear: return "linear";
    }
    return "?";
}

const char* to_string(HFunction h) {
    switch (h) {
        case HFunction::Ar: return "ar";
        case HFunction::Zero: return "zero";
    }
    return "?";
}

GFunction g_function_from_string(std::string_view name) {
    if (name == "log") return GFunction::ClampedLog;
    if (name == "linear") return GFunction::Linear;
    throw std::invalid_argument("unknown g function '" + std::string(name) +
                                "' (expected: log, linear)");
}

HFunction h_function_from_string(std::string_view name) {
    if (name == "ar") return HFunction::Ar;
    if (name == "zero") return HFunction::Zero;
    throw std::invalid_argument("unknown h function '" + std::string(name) +
                                "' (expected: ar, zero)");
}

void MicroParams::validate() const {
    auto require = [](bool ok, const char* message) {
        if (!ok) throw std::invalid_argument(message);
    };
    require(std::isfinite(rho) && rho > 0.0, "micro params: rho > 0 violated");
    require(std::isfinite(k) && k > 0.0, "micro params: k > 0 violated");
    require(std::isfinite(s_liquidity) && s_liquidity > 0.0,
            "micro params: s_liquidity > 0 violated");
    require(std::isfinite(p1) && p1 >= 0.0, "micro params: p1 >= 0 violated");
    require(std::isfinite(p2) && p2 >= 0.0, "micro params: p2 >= 0 violated");
    require(std::isfinite(lambda) && lambda > 0.0, "micro params: lambda > 0 violated");
    require(std::isfinite(gamma) && gamma > 0.0, "micro params: gamma > 0 violated");

    // Mirrors micro_alpha/micro_beta in garch.cpp; the unit tests pin the two
    // expressions to each other.
    const double rk = rho * k;
    const double rk2 = rk * rk;
    const double composite =
        rk2 * (p1 * p1) * (lambda * lambda) + rk2 * (p2 * p2) * (gamma * gamma);
    if (!(composite < 1.0)) {
        throw std::invalid_argument(
            "micro params: stationarity rho^2 k^2 (p1^2 lambda^2 + p2^2 gamma^2) < 1 "
            "violated (value " +
            std::to_string(composite) + ")");
    }
}

double g_log(double x) {
    return std::log(1.0 + std::max(-0.99, x));
}

double h_ar(double x) {
    return 0.1 * x;
}

double eval_g(GFunction g, double x) {
    switch (g) {
        case GFunction::ClampedLog: return g_log(x);
        case GFunction::Linear: return x;
    }
    throw std::invalid_argument("unhandled g function tag");
}

double eval_h(HFunction h, double x) {
    switch (h) {
        case HFunction::Ar: return h_ar(x);
        case HFunction::Zero: return 0.0;
    }
    throw std::invalid_argument("unhandled h function tag");
}

UtilityValue fundamental_utility(double x_prev, double sigma_prev,
                                 const MicroParams& params) {
    if (sigma_prev < 0.0) {
        throw std::domain_error("fundamental_utility: sigma_prev must be >= 0");
    }
    return {eval_g(params.g_fn, x_prev) - params.lambda * sigma_prev};
}

UtilityValue ai_utility(double x_prev, double u_prev, const MicroParams& params) {
    return {eval_h(params.h_fn, x_prev) - params.gamma * std::fabs(u_prev)};
}

}  // namespace micromarket

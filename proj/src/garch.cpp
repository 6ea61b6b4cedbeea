#include "micromarket/garch.hpp"

#include <cmath>
#include <stdexcept>

namespace micromarket {

namespace {

double rho_k_squared(const MicroParams& p) {
    const double rk = p.rho * p.k;
    return rk * rk;
}

}  // namespace

void GarchParams::validate() const {
    auto require = [](bool ok, const char* message) {
        if (!ok) throw std::invalid_argument(message);
    };
    require(std::isfinite(omega) && omega > 0.0, "garch params: omega > 0 violated");
    require(std::isfinite(f_value), "garch params: f_value must be finite");
    require(std::isfinite(alpha) && alpha >= 0.0, "garch params: alpha >= 0 violated");
    require(std::isfinite(beta) && beta >= 0.0, "garch params: beta >= 0 violated");
    require(alpha + beta < 1.0, "garch params: stationarity alpha + beta < 1 violated");
}

GarchStep garch_step(const GarchParams& params, const GarchState& state, double eps) {
    params.validate();
    if (!(state.sigma2_prev >= 0.0)) {
        throw std::domain_error("garch_step: sigma2_prev must be >= 0");
    }
    const double sigma2 = params.omega + params.alpha * (state.u_prev * state.u_prev) +
                          params.beta * state.sigma2_prev;
    const double u = std::sqrt(sigma2) * eps;
    return {params.f_value + u, {u, sigma2}};
}

double micro_alpha(const MicroParams& params) {
    return rho_k_squared(params) * (params.p2 * params.p2) *
           (params.gamma * params.gamma);
}

double micro_beta(const MicroParams& params) {
    return rho_k_squared(params) * (params.p1 * params.p1) *
           (params.lambda * params.lambda);
}

double stationarity_margin(const MicroParams& params) {
    return 1.0 - (micro_alpha(params) + micro_beta(params));
}

GarchParams micro_to_garch(const MicroParams& params, double x_prev, double u_prev,
                           double sigma_prev) {
    params.validate();
    if (sigma_prev < 0.0) {
        throw std::domain_error("micro_to_garch: sigma_prev must be >= 0");
    }
    const double rk2 = rho_k_squared(params);
    const double g = eval_g(params.g_fn, x_prev);
    const double h = eval_h(params.h_fn, x_prev);

    GarchParams out;
    out.omega = rk2 * (1.0 + (params.p1 * params.p1) * (g * g) +
                       (params.p2 * params.p2) * (h * h));
    out.f_value = params.rho * (params.p1 * (g - params.lambda * sigma_prev) +
                                params.p2 * (h - params.gamma * std::fabs(u_prev)));
    out.alpha = micro_alpha(params);
    out.beta = micro_beta(params);
    return out;
}

GarchParams reduce_noise_only(const MicroParams& params) {
    params.validate();
    if (params.p1 != 0.0 || params.p2 != 0.0) {
        throw std::invalid_argument(
            "reduce_noise_only: requires p1 == 0 and p2 == 0");
    }
    GarchParams out;
    out.omega = rho_k_squared(params);
    out.f_value = 0.0;
    out.alpha = 0.0;
    out.beta = 0.0;
    return out;
}

GarchParams reduce_noise_fundamental(const MicroParams& params, double x_prev,
                                     double sigma_prev) {
    params.validate();
    if (params.p2 != 0.0) {
        throw std::invalid_argument("reduce_noise_fundamental: requires p2 == 0");
    }
    if (sigma_prev < 0.0) {
        throw std::domain_error("reduce_noise_fundamental: sigma_prev must be >= 0");
    }
    const double rk2 = rho_k_squared(params);
    const double g = eval_g(params.g_fn, x_prev);

    GarchParams out;
    out.omega = rk2 * (1.0 + (params.p1 * params.p1) * (g * g));
    out.f_value = params.rho * (params.p1 * (g - params.lambda * sigma_prev));
    out.alpha = 0.0;
    out.beta = micro_beta(params);
    return out;
}

GarchParams reduce_noise_ai(const MicroParams& params, double x_prev, double u_prev) {
    params.validate();
    if (params.p1 != 0.0) {
        throw std::invalid_argument("reduce_noise_ai: requires p1 == 0");
    }
    const double rk2 = rho_k_squared(params);
    const double h = eval_h(params.h_fn, x_prev);

    GarchParams out;
    out.omega = rk2 * (1.0 + (params.p2 * params.p2) * (h * h));
    out.f_value = params.rho * (params.p2 * (h - params.gamma * std::fabs(u_prev)));
    out.alpha = micro_alpha(params);
    out.beta = 0.0;
    return out;
}

}  // namespace micromarket

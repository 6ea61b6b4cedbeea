#include "micromarket/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>

#include "micromarket/pricing.hpp"
#include "micromarket/rng.hpp"
#include "micromarket/stats.hpp"

namespace micromarket {

namespace {

double state_omega(const MicroParams& p, double x) {
    const double rk = p.rho * p.k;
    const double rk2 = rk * rk;
    const double g = eval_g(p.g_fn, x);
    const double h = eval_h(p.h_fn, x);
    return rk2 * (1.0 + (p.p1 * p.p1) * (g * g) + (p.p2 * p.p2) * (h * h));
}

double median_of(std::vector<double> values) {
    const std::size_t n = values.size();
    const std::size_t mid = n / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double m = values[mid];
    if (n % 2 == 0) {
        std::nth_element(values.begin(), values.begin() + mid - 1,
                         values.begin() + mid);
        m = 0.5 * (m + values[mid - 1]);
    }
    return m;
}

}  // namespace

ReturnSeries simulate(const MicroParams& params, std::size_t length,
                      std::uint64_t seed, std::size_t burn_in) {
    params.validate();
    if (length == 0) {
        throw std::invalid_argument("simulate: length must be >= 1");
    }
    const double margin = stationarity_margin(params);
    if (!(margin > 0.0)) {
        throw std::invalid_argument(
            "simulate: non-stationary micro params (margin " +
            std::to_string(margin) + " <= 0)");
    }

    const double alpha = micro_alpha(params);
    const double beta = micro_beta(params);

    ReturnSeries out;
    out.seed = seed;
    out.params = params;
    out.burn_in = burn_in;
    out.returns.reserve(length);
    out.diagnostics.reserve(length);

    Rng rng(seed);

    // Start near stationarity: unconditional-variance heuristic with the
    // constant term evaluated at x = 0, zero residual.
    MarketState state;
    state.sigma_prev = std::sqrt(state_omega(params, 0.0) / margin);

    const std::size_t total = burn_in + length;
    for (; state.t < total; ++state.t) {
        if (state.t == burn_in) {
            out.initial_u = state.u_prev;
            out.initial_sigma = state.sigma_prev;
        }
        const double eps_fund = rng.normal();
        const double x = eps_fund;  // i.i.d. standard normal fundamental
        const double eps = rng.normal();

        const UtilityValue u_fund = fundamental_utility(x, state.sigma_prev, params);
        const UtilityValue u_ai = ai_utility(x, state.u_prev, params);
        const OrderVolumes vols = order_volumes(u_fund, u_ai, eps, params);
        const double r = step_return_closed_form(u_fund, u_ai, eps, params);
        const double cond_mean = expected_step_return(u_fund, u_ai, params);

        const double u_next = r - cond_mean;
        const double sigma2_next = state_omega(params, x) +
                                   alpha * (state.u_prev * state.u_prev) +
                                   beta * (state.sigma_prev * state.sigma_prev);
        const double sigma_next = std::sqrt(sigma2_next);

        if (state.t >= burn_in) {
            out.returns.push_back(r);
            out.diagnostics.push_back({x, eps, eps_fund, r, u_next, sigma_next,
                                       vols.buy, vols.sell, cond_mean});
            if (vols.buy < 0.0 || vols.sell < 0.0) ++out.negative_volume_steps;
            if (std::fabs(r) > 1.0) ++out.large_return_steps;
        }
        state.x_prev = x;
        state.u_prev = u_next;
        state.sigma_prev = sigma_next;
    }
    return out;
}

std::vector<ReturnSeries> simulate_batch(const MicroParams& params,
                                         std::size_t length,
                                         std::span<const std::uint64_t> seeds,
                                         std::size_t burn_in) {
    if (seeds.empty()) {
        throw std::invalid_argument("simulate_batch: seeds must be non-empty");
    }
    std::unordered_set<std::uint64_t> unique(seeds.begin(), seeds.end());
    if (unique.size() != seeds.size()) {
        throw std::invalid_argument("simulate_batch: duplicate seeds");
    }
    params.validate();
    if (length == 0) {
        throw std::invalid_argument("simulate_batch: length must be >= 1");
    }

    std::vector<ReturnSeries> out(seeds.size());
    const std::size_t workers = std::min<std::size_t>(
        seeds.size(), std::max(1u, std::thread::hardware_concurrency()));

    if (workers <= 1) {
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            out[i] = simulate(params, length, seeds[i], burn_in);
        }
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < seeds.size();
                     i = next.fetch_add(1)) {
                    try {
                        out[i] = simulate(params, length, seeds[i], burn_in);
                    } catch (...) {
                        if (!failed.exchange(true)) error = std::current_exception();
                        return;
                    }
                }
            });
        }
    }
    if (failed) std::rethrow_exception(error);
    return out;
}

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::P1: return "p1";
        case SweepAxis::P2: return "p2";
        case SweepAxis::Lambda: return "lambda";
        case SweepAxis::Gamma: return "gamma";
        case SweepAxis::Rho: return "rho";
        case SweepAxis::K: return "k";
    }
    return "?";
}

SweepAxis sweep_axis_from_string(std::string_view name) {
    if (name == "p1") return SweepAxis::P1;
    if (name == "p2") return SweepAxis::P2;
    if (name == "lambda") return SweepAxis::Lambda;
    if (name == "gamma") return SweepAxis::Gamma;
    if (name == "rho") return SweepAxis::Rho;
    if (name == "k") return SweepAxis::K;
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) +
                                "' (expected: p1, p2, lambda, gamma, rho, k)");
}

MicroParams with_axis_value(const MicroParams& base, SweepAxis axis, double value) {
    MicroParams p = base;
    switch (axis) {
        case SweepAxis::P1: p.p1 = value; break;
        case SweepAxis::P2: p.p2 = value; break;
        case SweepAxis::Lambda: p.lambda = value; break;
        case SweepAxis::Gamma: p.gamma = value; break;
        case SweepAxis::Rho: p.rho = value; break;
        case SweepAxis::K: p.k = value; break;
    }
    return p;
}

SweepReport sweep(const MicroParams& base, SweepAxis axis,
                  std::span<const double> values, std::size_t length,
                  std::span<const std::uint64_t> seeds, std::size_t burn_in) {
    if (values.empty()) {
        throw std::invalid_argument("sweep: values must be non-empty");
    }
    SweepReport report;
    report.axis = axis;
    report.rows.reserve(values.size());

    for (double value : values) {
        const MicroParams p = with_axis_value(base, axis, value);
        try {
            p.validate();
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("sweep: " + std::string(to_string(axis)) +
                                        " = " + std::to_string(value) + ": " +
                                        e.what());
        }

        SweepRow row;
        row.axis_value = value;
        row.mapped = micro_to_garch(p, 0.0, 0.0, 0.0);
        row.margin = stationarity_margin(p);

        const auto batch = simulate_batch(p, length, seeds, burn_in);
        std::vector<double> skews, kurts, kss, acfs;
        skews.reserve(batch.size());
        kurts.reserve(batch.size());
        kss.reserve(batch.size());
        acfs.reserve(batch.size());
        for (const auto& series : batch) {
            skews.push_back(skewness(series.returns));
            kurts.push_back(kurtosis(series.returns));
            kss.push_back(ks_statistic(series.returns));
            acfs.push_back(sq_autocorrelation(series.returns, 1));
        }
        row.median_skewness = median_of(std::move(skews));
        row.median_kurtosis = median_of(std::move(kurts));
        row.median_ks = median_of(std::move(kss));
        row.median_sq_autocorr1 = median_of(std::move(acfs));

        report.rows.push_back(row);
    }
    return report;
}

}  // namespace micromarket

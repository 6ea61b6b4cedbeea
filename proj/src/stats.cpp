#include "micromarket/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace micromarket {

namespace {

double mean_of(std::span<const double> r) {
    double acc = 0.0;
    for (double v : r) acc += v;
    return acc / static_cast<double>(r.size());
}

}  // namespace

double skewness(std::span<const double> r) {
    if (r.size() < 3) {
        throw std::invalid_argument("skewness: need at least 3 samples");
    }
    const double n = static_cast<double>(r.size());
    const double m = mean_of(r);
    double m2 = 0.0, m3 = 0.0;
    for (double v : r) {
        const double d = v - m;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    if (!(m2 > 0.0)) {
        throw std::domain_error("skewness: degenerate sample (zero variance)");
    }
    return m3 / (m2 * std::sqrt(m2));
}

double kurtosis(std::span<const double> r) {
    if (r.size() < 4) {
        throw std::invalid_argument("kurtosis: need at least 4 samples");
    }
    const double n = static_cast<double>(r.size());
    const double m = mean_of(r);
    double m2 = 0.0, m4 = 0.0;
    for (double v : r) {
        const double d = v - m;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= n;
    m4 /= n;
    if (!(m2 > 0.0)) {
        throw std::domain_error("kurtosis: degenerate sample (zero variance)");
    }
    return m4 / (m2 * m2);
}

double ks_statistic(std::span<const double> r) {
    if (r.size() < 2) {
        throw std::invalid_argument("ks_statistic: need at least 2 samples");
    }
    const double n = static_cast<double>(r.size());
    const double m = mean_of(r);
    double var = 0.0;
    for (double v : r) {
        const double d = v - m;
        var += d * d;
    }
    var /= n;
    if (!(var > 0.0)) {
        throw std::domain_error("ks_statistic: degenerate sample (zero variance)");
    }
    const double sd = std::sqrt(var);

    std::vector<double> sorted(r.begin(), r.end());
    std::sort(sorted.begin(), sorted.end());

    double d_max = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = normal_cdf((sorted[i] - m) / sd);
        const double upper = static_cast<double>(i + 1) / n - cdf;
        const double lower = cdf - static_cast<double>(i) / n;
        d_max = std::max({d_max, upper, lower});
    }
    return d_max;
}

double sq_autocorrelation(std::span<const double> r, std::size_t lag) {
    if (r.size() <= lag) {
        throw std::invalid_argument(
            "sq_autocorrelation: lag must be smaller than the sample length");
    }
    const std::size_t n = r.size();
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = r[i] * r[i];
    const double m = mean_of(sq);

    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double d = sq[t] - m;
        den += d * d;
        if (t >= lag) num += d * (sq[t - lag] - m);
    }
    if (!(den > 0.0)) {
        throw std::domain_error(
            "sq_autocorrelation: degenerate sample (constant squared series)");
    }
    return num / den;
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double kolmogorov_cdf(double lambda) {
    if (!(lambda > 0.0)) return 0.0;
    const double x2 = lambda * lambda;
    if (lambda < 1.18) {
        // Theta expansion that converges fast for small arguments.
        const double f = std::exp(-std::numbers::pi * std::numbers::pi / (8.0 * x2));
        const double sum = f + std::pow(f, 9.0) + std::pow(f, 25.0) + std::pow(f, 49.0);
        return std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 32; ++j) {
        const double term = std::exp(-2.0 * j * j * x2);
        sum += sign * term;
        if (term < 1e-18) break;
        sign = -sign;
    }
    return std::clamp(1.0 - 2.0 * sum, 0.0, 1.0);
}

StylizedFactsReport evaluate_stylized_facts(std::span<const double> r,
                                            double significance,
                                            std::span<const std::size_t> lags) {
    if (r.size() < 30) {
        throw std::invalid_argument(
            "evaluate_stylized_facts: need at least 30 samples");
    }
    if (!(significance > 0.0 && significance < 1.0)) {
        throw std::invalid_argument(
            "evaluate_stylized_facts: significance must be in (0, 1)");
    }
    const double t = static_cast<double>(r.size());

    StylizedFactsReport rep;
    rep.sample_size = r.size();
    rep.significance = significance;

    const double sk = skewness(r);
    const double p_sk = normal_cdf(sk / std::sqrt(6.0 / t));  // lower tail
    rep.skewness = {sk, p_sk, p_sk < significance};

    const double ku = kurtosis(r);
    const double p_ku = 1.0 - normal_cdf((ku - 3.0) / std::sqrt(24.0 / t));
    rep.kurtosis = {ku, p_ku, p_ku < significance};

    const double d = ks_statistic(r);
    const double p_ks = 1.0 - kolmogorov_cdf(std::sqrt(t) * d);
    rep.ks = {d, p_ks, p_ks < significance};

    for (std::size_t lag : lags) {
        const double a = sq_autocorrelation(r, lag);
        const double p = 1.0 - normal_cdf(a * std::sqrt(t));  // upper tail
        rep.sq_autocorr[lag] = {a, p, p < significance};
    }
    return rep;
}

// ---------------------------------------------------------------------------

const char* to_string(UtilityTag tag) {
    switch (tag) {
        case UtilityTag::Exponential: return "exponential";
        case UtilityTag::LogShifted: return "log";
        case UtilityTag::Power: return "power";
    }
    return "?";
}

UtilityTag utility_from_string(std::string_view name) {
    if (name == "exponential") return UtilityTag::Exponential;
    if (name == "log") return UtilityTag::LogShifted;
    if (name == "power") return UtilityTag::Power;
    if (name == "linear") {
        throw std::invalid_argument(
            "utility 'linear' is not strictly concave and is not admitted");
    }
    throw std::invalid_argument("unknown utility '" + std::string(name) +
                                "' (expected: exponential, log, power)");
}

double utility_value(UtilityTag tag, double ret) {
    switch (tag) {
        case UtilityTag::Exponential:
            return -std::exp(-ret);
        case UtilityTag::LogShifted:
            if (!(1.0 + ret > 0.0)) {
                throw std::domain_error(
                    "log utility undefined at return " + std::to_string(ret));
            }
            return std::log1p(ret);
        case UtilityTag::Power:
            if (!(1.0 + ret > 0.0)) {
                throw std::domain_error(
                    "power utility undefined at return " + std::to_string(ret));
            }
            return std::sqrt(1.0 + ret);
    }
    throw std::invalid_argument("unhandled utility tag");
}

std::vector<QuadratureNode> gauss_hermite(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("gauss_hermite: need at least 2 nodes");
    }
    constexpr double kTol = 1e-14;
    constexpr int kMaxIter = 60;
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    const double dn = static_cast<double>(n);

    std::vector<QuadratureNode> nodes(n);
    const std::size_t m = (n + 1) / 2;
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        // Root guesses walk in from the largest root.
        if (i == 0) {
            z = std::sqrt(2.0 * dn + 1.0) -
                1.85575 * std::pow(2.0 * dn + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(dn, 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * nodes[0].x;
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * nodes[1].x;
        } else {
            z = 2.0 * z - nodes[i - 2].x;
        }

        double pp = 0.0;
        int iter = 0;
        for (; iter < kMaxIter; ++iter) {
            // Orthonormal Hermite recurrence; avoids overflow for large n.
            double p1 = pim4;
            double p2 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                const double dj = static_cast<double>(j);
                p1 = z * std::sqrt(2.0 / dj) * p2 - std::sqrt((dj - 1.0) / dj) * p3;
            }
            pp = std::sqrt(2.0 * dn) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= kTol) break;
        }
        if (iter == kMaxIter) {
            throw std::runtime_error("gauss_hermite: Newton iteration stalled");
        }
        nodes[i].x = z;
        nodes[n - 1 - i].x = -z;
        nodes[i].w = 2.0 / (pp * pp);
        nodes[n - 1 - i].w = nodes[i].w;
    }
    return nodes;
}

RiskMonotonicityReport verify_risk_monotonicity(UtilityTag tag, double mu,
                                                std::span<const double> sigma_grid,
                                                std::size_t nodes) {
    if (sigma_grid.empty()) {
        throw std::invalid_argument(
            "verify_risk_monotonicity: sigma grid must be non-empty");
    }
    for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
        if (!(sigma_grid[i] > 0.0)) {
            throw std::invalid_argument(
                "verify_risk_monotonicity: sigma values must be positive");
        }
        if (i > 0 && !(sigma_grid[i] > sigma_grid[i - 1])) {
            throw std::invalid_argument(
                "verify_risk_monotonicity: sigma grid must be strictly increasing");
        }
    }

    const auto rule = gauss_hermite(nodes);
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);

    RiskMonotonicityReport report;
    report.utility = tag;
    report.mu = mu;
    report.nodes = nodes;
    report.estimates.reserve(sigma_grid.size());

    for (double sigma : sigma_grid) {
        double acc = 0.0;
        for (const auto& node : rule) {
            const double ret = mu + sigma * std::numbers::sqrt2 * node.x;
            acc += node.w * utility_value(tag, ret);
        }
        report.estimates.push_back({sigma, acc * inv_sqrt_pi});
    }

    report.monotone_non_increasing = true;
    for (std::size_t i = 1; i < report.estimates.size(); ++i) {
        const double prev = report.estimates[i - 1].expected_utility;
        const double cur = report.estimates[i].expected_utility;
        const double tol = 1e-9 * (1.0 + std::fabs(prev));
        if (cur > prev + tol) {
            report.monotone_non_increasing = false;
            break;
        }
    }
    return report;
}

}  // namespace micromarket

#ifndef MICROMARKET_STATS_HPP
#define MICROMARKET_STATS_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace micromarket {

// All moment estimators use plain 1/T normalization, no bias corrections.

/// Third standardized central moment. Needs length >= 3 and a non-constant
/// sample.
double skewness(std::span<const double> r);

/// Fourth standardized central moment (non-excess; 3 for a normal). Needs
/// length >= 4 and a non-constant sample.
double kurtosis(std::span<const double> r);

/// sup_x |empirical CDF - normal CDF| against the normal with the sample's
/// mean and variance, evaluated at both edges of every empirical step.
/// Always in [0, 1].
double ks_statistic(std::span<const double> r);

/// Autocorrelation of the squared series at the given lag, centered on the
/// mean of the squares; lag 0 evaluates to 1 by construction. Needs
/// length > lag and a non-constant squared series.
double sq_autocorrelation(std::span<const double> r, std::size_t lag);

double normal_cdf(double z);

/// Asymptotic CDF of sqrt(T) * D for the Kolmogorov statistic D.
double kolmogorov_cdf(double lambda);

struct TestedStatistic {
    double value = 0.0;
    double p_value = 1.0;
    bool verdict = false;  // stylized fact present at the configured level
};

inline constexpr std::size_t kDefaultAcfLags[] = {1, 2, 3, 4, 5};

/// Battery over a return series. Verdicts: skewness significantly below zero,
/// kurtosis significantly above 3, normality rejected, lag-1 squared
/// autocorrelation significantly positive. Directional tests use normal
/// asymptotics (SE sqrt(6/T), sqrt(24/T), 1/sqrt(T)); the KS p-value comes
/// from the asymptotic Kolmogorov distribution and is conservative because
/// mean and variance are estimated from the sample.
struct StylizedFactsReport {
    TestedStatistic skewness;
    TestedStatistic kurtosis;
    TestedStatistic ks;
    std::map<std::size_t, TestedStatistic> sq_autocorr;
    std::size_t sample_size = 0;
    double significance = 0.01;

    bool volatility_clustering() const { return sq_autocorr.at(1).verdict; }
};

StylizedFactsReport evaluate_stylized_facts(
    std::span<const double> r, double significance = 0.01,
    std::span<const std::size_t> lags = kDefaultAcfLags);

// ---------------------------------------------------------------------------
// Risk monotonicity: expected utility of mu + sigma * eps, eps ~ N(0,1), must
// not increase with sigma for any strictly increasing, strictly concave
// utility. Estimated by Gauss-Hermite quadrature, so the estimate is
// deterministic.

enum class UtilityTag { Exponential, LogShifted, Power };

const char* to_string(UtilityTag tag);
/// Accepts "exponential", "log", "power". "linear" is recognized and rejected
/// as not strictly concave; anything else is unknown.
UtilityTag utility_from_string(std::string_view name);

/// U(ret) for the catalog entry; log and power utilities throw
/// std::domain_error once 1 + ret leaves their domain.
double utility_value(UtilityTag tag, double ret);

struct RiskEstimate {
    double sigma = 0.0;
    double expected_utility = 0.0;
};

struct RiskMonotonicityReport {
    UtilityTag utility = UtilityTag::Exponential;
    double mu = 0.0;
    std::size_t nodes = 0;
    std::vector<RiskEstimate> estimates;
    bool monotone_non_increasing = false;
};

/// sigma_grid must be strictly increasing and positive. Throws
/// std::domain_error if any quadrature point leaves the utility's domain.
RiskMonotonicityReport verify_risk_monotonicity(UtilityTag tag, double mu,
                                                std::span<const double> sigma_grid,
                                                std::size_t nodes = 64);

struct QuadratureNode {
    double x = 0.0;
    double w = 0.0;
};

/// Nodes and weights for integrating f against exp(-x^2) over the real line.
std::vector<QuadratureNode> gauss_hermite(std::size_t n);

}  // namespace micromarket

#endif  // MICROMARKET_STATS_HPP

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "micromarket/config.hpp"
#include "micromarket/csv_io.hpp"
#include "micromarket/garch.hpp"
#include "micromarket/rng.hpp"
#include "micromarket/sim_engine.hpp"
#include "micromarket/stats.hpp"

namespace {

using namespace micromarket;

// Exit codes: 0 success, 2 usage/config error, 3 validation error,
// 4 I/O error, 5 degenerate-data error.
enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kValidation = 3, kIo = 4, kDegenerate = 5 };

constexpr const char* kConfigEnvVar = "MICROMARKET_CONFIG";

/// Registers the shared config/override flags on a subcommand. Flag values
/// win over config-file values, which win over built-in defaults.
struct CommonFlags {
    CLI::Option* config_opt = nullptr;
    std::string config_path;

    CLI::Option* rho = nullptr;
    CLI::Option* k = nullptr;
    CLI::Option* s_liquidity = nullptr;
    CLI::Option* p1 = nullptr;
    CLI::Option* p2 = nullptr;
    CLI::Option* lambda = nullptr;
    CLI::Option* gamma = nullptr;
    CLI::Option* g_fn = nullptr;
    CLI::Option* h_fn = nullptr;
    CLI::Option* length = nullptr;
    CLI::Option* burn_in = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* seeds = nullptr;
    CLI::Option* significance = nullptr;

    double rho_v = 0, k_v = 0, s_v = 0, p1_v = 0, p2_v = 0, lambda_v = 0,
           gamma_v = 0, significance_v = 0;
    std::string g_v, h_v;
    std::size_t length_v = 0, burn_in_v = 0;
    std::uint64_t seed_v = 0;
    std::vector<std::uint64_t> seeds_v;

    void attach(CLI::App& cmd) {
        config_opt = cmd.add_option("-c,--config", config_path,
                                    "JSON config file (default: $" +
                                        std::string(kConfigEnvVar) + ")");
        rho = cmd.add_option("--rho", rho_v, "order-imbalance coefficient");
        k = cmd.add_option("--k", k_v, "liquidity-taking intensity");
        s_liquidity = cmd.add_option("--s-liquidity", s_v, "total order scale S");
        p1 = cmd.add_option("--p1", p1_v, "fundamental/noise trader ratio");
        p2 = cmd.add_option("--p2", p2_v, "AI/noise trader ratio");
        lambda = cmd.add_option("--lambda", lambda_v, "fundamental risk aversion");
        gamma = cmd.add_option("--gamma", gamma_v, "AI risk aversion");
        g_fn = cmd.add_option("--g-fn", g_v, "fundamental forecast (log, linear)");
        h_fn = cmd.add_option("--h-fn", h_v, "AI forecast (ar, zero)");
        length = cmd.add_option("--length", length_v, "kept steps per run");
        burn_in = cmd.add_option("--burn-in", burn_in_v, "discarded warmup steps");
        seed = cmd.add_option("--seed", seed_v, "single seed (replaces the list)");
        seeds = cmd.add_option("--seeds", seeds_v, "seed list")->delimiter(',');
        significance = cmd.add_option("--significance", significance_v,
                                      "test level in (0, 1)");
    }

    ExperimentConfig resolve() const {
        ExperimentConfig cfg;
        if (!config_path.empty()) {
            cfg = load_config(config_path);
        } else if (const char* env = std::getenv(kConfigEnvVar); env && *env) {
            cfg = load_config(env);
        }
        if (rho->count()) cfg.params.rho = rho_v;
        if (k->count()) cfg.params.k = k_v;
        if (s_liquidity->count()) cfg.params.s_liquidity = s_v;
        if (p1->count()) cfg.params.p1 = p1_v;
        if (p2->count()) cfg.params.p2 = p2_v;
        if (lambda->count()) cfg.params.lambda = lambda_v;
        if (gamma->count()) cfg.params.gamma = gamma_v;
        if (g_fn->count()) cfg.params.g_fn = g_function_from_string(g_v);
        if (h_fn->count()) cfg.params.h_fn = h_function_from_string(h_v);
        if (length->count()) cfg.length = length_v;
        if (burn_in->count()) cfg.burn_in = burn_in_v;
        if (seeds->count()) cfg.seeds = seeds_v;
        if (seed->count()) cfg.seeds = {seed_v};
        if (significance->count()) cfg.significance = significance_v;
        return cfg;
    }
};

std::string market_type_of(const MicroParams& p) {
    if (p.p1 == 0.0 && p.p2 == 0.0) return "noise-only";
    if (p.p2 == 0.0) return "noise+fundamental";
    if (p.p1 == 0.0) return "noise+ai";
    return "noise+fundamental+ai";
}

int run_simulate(const CommonFlags& flags, const std::string& out_flag,
                 const std::string& meta_flag) {
    ExperimentConfig cfg = flags.resolve();
    cfg.validate();

    const std::uint64_t seed = cfg.seeds.front();
    const ReturnSeries series = simulate(cfg.params, cfg.length, seed, cfg.burn_in);

    const std::string out = out_flag.empty() ? cfg.trajectory_csv : out_flag;
    std::string meta = meta_flag.empty() ? cfg.metadata_json : meta_flag;
    if (meta.empty()) meta = out + ".meta.json";

    write_trajectory_csv(out, series);
    write_run_metadata(meta, series);

    std::cout << "wrote " << series.length() << " steps to " << out << " (seed "
              << seed << ", rng " << kRngId << ")\n"
              << "negative-volume steps: " << series.negative_volume_steps
              << ", |r| > 1 steps: " << series.large_return_steps << "\n"
              << "metadata: " << meta << "\n";
    return kOk;
}

int run_stats(const CommonFlags& flags, const std::string& input_flag,
              const std::string& report_flag) {
    ExperimentConfig cfg = flags.resolve();

    std::vector<double> returns;
    StatsSource source;
    if (!input_flag.empty()) {
        if (!(cfg.significance > 0.0 && cfg.significance < 1.0)) {
            throw std::invalid_argument("significance must be in (0, 1)");
        }
        returns = read_returns_csv(input_flag);
        source = {input_flag, false, 0};
    } else {
        cfg.validate();
        const ReturnSeries series =
            simulate(cfg.params, cfg.length, cfg.seeds.front(), cfg.burn_in);
        returns = series.returns;
        source = {"simulation (seed " + std::to_string(series.seed) + ")", true,
                  series.seed};
    }

    const StylizedFactsReport report =
        evaluate_stylized_facts(returns, cfg.significance);

    std::cout << "stylized facts for " << source.description << "\n"
              << render_stats_table(report);

    const std::string report_path =
        report_flag.empty() ? cfg.report_json : report_flag;
    if (!report_path.empty()) {
        write_stats_report(report_path, report, source);
        std::cout << "report: " << report_path << "\n";
    }
    return kOk;
}

int run_garch_map(const CommonFlags& flags, const std::string& report_flag) {
    ExperimentConfig cfg = flags.resolve();
    cfg.params.validate();

    const GarchParams mapped = micro_to_garch(cfg.params, 0.0, 0.0, 0.0);
    const double margin = stationarity_margin(cfg.params);
    const std::string market_type = market_type_of(cfg.params);

    char line[128];
    std::cout << "market type: " << market_type << "\n";
    std::snprintf(line, sizeof(line), "omega (x=0) = %.12g\n", mapped.omega);
    std::cout << line;
    std::snprintf(line, sizeof(line), "f     (x=u=sigma=0) = %.12g\n",
                  mapped.f_value);
    std::cout << line;
    std::snprintf(line, sizeof(line), "alpha = %.12g\n", mapped.alpha);
    std::cout << line;
    std::snprintf(line, sizeof(line), "beta  = %.12g\n", mapped.beta);
    std::cout << line;
    std::snprintf(line, sizeof(line), "stationarity margin 1-(alpha+beta) = %.12g\n",
                  margin);
    std::cout << line;

    if (!report_flag.empty()) {
        write_garch_map_report(report_flag, cfg.params, mapped, margin, market_type);
        std::cout << "report: " << report_flag << "\n";
    }
    return kOk;
}

int run_sweep(const CommonFlags& flags, const std::string& axis_name,
              const std::vector<double>& values, const std::string& out_flag) {
    ExperimentConfig cfg = flags.resolve();
    cfg.validate();

    const SweepAxis axis = sweep_axis_from_string(axis_name);
    const SweepReport report =
        sweep(cfg.params, axis, values, cfg.length, cfg.seeds, cfg.burn_in);

    const std::string out = out_flag.empty() ? cfg.sweep_csv : out_flag;
    write_sweep_csv(out, report);
    write_sweep_metadata(out + ".meta.json", cfg.params, report, cfg.length,
                         cfg.burn_in, cfg.seeds);

    std::cout << "sweep over " << to_string(axis) << " (" << report.rows.size()
              << " values, " << cfg.seeds.size() << " seeds x " << cfg.length
              << " steps)\n";
    char line[160];
    for (const SweepRow& row : report.rows) {
        std::snprintf(line, sizeof(line),
                      "%s = %-8g omega = %-10.6g alpha = %-10.6g beta = %-10.6g "
                      "median acf1 = %.4f\n",
                      to_string(axis), row.axis_value, row.mapped.omega,
                      row.mapped.alpha, row.mapped.beta, row.median_sq_autocorr1);
        std::cout << line;
    }
    std::cout << "csv: " << out << "\n";
    return kOk;
}

int run_verify_lemma(const std::string& utility_name, double mu,
                     std::vector<double> sigma_grid, std::size_t nodes) {
    const UtilityTag tag = utility_from_string(utility_name);
    if (sigma_grid.empty()) {
        sigma_grid = (tag == UtilityTag::Exponential)
                         ? std::vector<double>{0.1, 0.25, 0.5, 1.0, 1.5, 2.0}
                         : std::vector<double>{0.005, 0.01, 0.02, 0.04, 0.06};
    }

    const RiskMonotonicityReport report =
        verify_risk_monotonicity(tag, mu, sigma_grid, nodes);

    std::cout << "expected utility of " << to_string(tag) << " at mu = " << mu
              << " (" << nodes << " quadrature nodes)\n";
    char line[96];
    for (const RiskEstimate& e : report.estimates) {
        std::snprintf(line, sizeof(line), "sigma = %-8g E[U] = %.12g\n", e.sigma,
                      e.expected_utility);
        std::cout << line;
    }
    std::cout << "verdict: "
              << (report.monotone_non_increasing ? "monotone decreasing"
                                                 : "NOT monotone decreasing")
              << "\n";
    return report.monotone_non_increasing ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "micromarket: three-trader market simulator with an order-imbalance "
        "pricing rule, a GARCH(1,1) parameter mapping, and a stylized-facts "
        "test battery"};
    app.require_subcommand(1);

    auto* sim_cmd = app.add_subcommand("simulate", "run one simulation, write CSV");
    CommonFlags sim_flags;
    sim_flags.attach(*sim_cmd);
    std::string sim_out, sim_meta;
    sim_cmd->add_option("-o,--out", sim_out, "trajectory CSV path");
    sim_cmd->add_option("--meta", sim_meta, "metadata JSON path");

    auto* stats_cmd =
        app.add_subcommand("stats", "stylized-facts battery on a CSV or simulation");
    CommonFlags stats_flags;
    stats_flags.attach(*stats_cmd);
    std::string stats_input, stats_report;
    stats_cmd->add_option("-i,--input", stats_input,
                          "returns CSV (trajectory or single column)");
    stats_cmd->add_option("--report", stats_report, "report JSON path");

    auto* map_cmd = app.add_subcommand(
        "garch-map", "GARCH parameters implied by the micro model");
    CommonFlags map_flags;
    map_flags.attach(*map_cmd);
    std::string map_report;
    map_cmd->add_option("--report", map_report, "report JSON path");

    auto* sweep_cmd =
        app.add_subcommand("sweep", "parameter sweep with batch statistics");
    CommonFlags sweep_flags;
    sweep_flags.attach(*sweep_cmd);
    std::string sweep_axis_name, sweep_out;
    std::vector<double> sweep_values;
    sweep_cmd->add_option("--axis", sweep_axis_name,
                          "one of p1, p2, lambda, gamma, rho, k")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "axis values")
        ->delimiter(',')
        ->required()
        ->expected(1, -1);
    sweep_cmd->add_option("-o,--out", sweep_out, "sweep CSV path");

    auto* lemma_cmd = app.add_subcommand(
        "verify-lemma",
        "check that expected utility is non-increasing in volatility");
    std::string lemma_utility = "exponential";
    double lemma_mu = 0.0;
    std::vector<double> lemma_grid;
    std::size_t lemma_nodes = 64;
    lemma_cmd->add_option("--utility", lemma_utility,
                          "exponential, log or power");
    lemma_cmd->add_option("--mu", lemma_mu, "mean return");
    lemma_cmd->add_option("--sigma-grid", lemma_grid, "increasing sigma values")
        ->delimiter(',');
    lemma_cmd->add_option("--nodes", lemma_nodes, "quadrature nodes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (sim_cmd->parsed()) return run_simulate(sim_flags, sim_out, sim_meta);
        if (stats_cmd->parsed())
            return run_stats(stats_flags, stats_input, stats_report);
        if (map_cmd->parsed()) return run_garch_map(map_flags, map_report);
        if (sweep_cmd->parsed())
            return run_sweep(sweep_flags, sweep_axis_name, sweep_values, sweep_out);
        if (lemma_cmd->parsed())
            return run_verify_lemma(lemma_utility, lemma_mu, lemma_grid, lemma_nodes);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const CsvFormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kIo;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIo;
    } catch (const std::domain_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kDegenerate;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}

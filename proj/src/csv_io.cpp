#include "micromarket/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "micromarket/rng.hpp"

namespace micromarket {

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_double(const std::string& cell, double& out) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end != begin && (*(end - 1) == ' ' || *(end - 1) == '\t' ||
                            *(end - 1) == '\r')) {
        --end;
    }
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc{} && result.ptr == end && begin != end;
}

}  // namespace

std::string format_full(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const ReturnSeries& series) {
    auto out = open_for_writing(path);
    out << "t,x,eps,r,u,sigma,buy,sell,cond_mean\n";
    for (std::size_t t = 0; t < series.diagnostics.size(); ++t) {
        const StepRecord& d = series.diagnostics[t];
        out << t << ',' << format_full(d.x) << ',' << format_full(d.eps_price)
            << ',' << format_full(d.r) << ',' << format_full(d.u) << ','
            << format_full(d.sigma) << ',' << format_full(d.buy) << ','
            << format_full(d.sell) << ',' << format_full(d.cond_mean) << '\n';
    }
    if (!out) {
        throw IoError("failed while writing '" + path.string() + "'");
    }
}

void write_run_metadata(const std::filesystem::path& path,
                        const ReturnSeries& series) {
    nlohmann::json j;
    j["rng"] = kRngId;
    j["seed"] = series.seed;
    j["length"] = series.length();
    j["burn_in"] = series.burn_in;
    j["params"] = {
        {"rho", series.params.rho},
        {"k", series.params.k},
        {"s_liquidity", series.params.s_liquidity},
        {"p1", series.params.p1},
        {"p2", series.params.p2},
        {"lambda", series.params.lambda},
        {"gamma", series.params.gamma},
        {"g_fn", to_string(series.params.g_fn)},
        {"h_fn", to_string(series.params.h_fn)},
    };
    j["initial_state"] = {{"u", series.initial_u}, {"sigma", series.initial_sigma}};
    j["negative_volume_steps"] = series.negative_volume_steps;
    j["large_return_steps"] = series.large_return_steps;

    auto out = open_for_writing(path);
    out << j.dump(2) << '\n';
    if (!out) {
        throw IoError("failed while writing '" + path.string() + "'");
    }
}

std::vector<double> read_returns_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }

    std::vector<double> returns;
    std::string line;
    std::size_t row = 0;
    std::size_t r_column = 0;
    bool has_header = false;

    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const auto cells = split_csv_row(line);
        if (row == 1) {
            double probe;
            if (!parse_double(cells.front(), probe)) {
                has_header = true;
                bool found = false;
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    if (cells[c] == "r") {
                        r_column = c;
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    throw CsvFormatError("row 1: header has no 'r' column in '" +
                                         path.string() + "'");
                }
                continue;
            }
            if (cells.size() != 1) {
                throw CsvFormatError(
                    "row 1: headerless input must have exactly one column in '" +
                    path.string() + "'");
            }
        }

        if (has_header && cells.size() <= r_column) {
            throw CsvFormatError("row " + std::to_string(row) +
                                 ": missing column " + std::to_string(r_column + 1));
        }
        const std::string& cell = has_header ? cells[r_column] : cells.front();
        double value;
        if (!parse_double(cell, value)) {
            throw CsvFormatError("row " + std::to_string(row) +
                                 ": cannot parse '" + cell + "' as a number");
        }
        returns.push_back(value);
    }
    return returns;
}

namespace {

nlohmann::json to_json(const TestedStatistic& s) {
    return {{"value", s.value},
            {"p_value", s.p_value},
            {"stylized_fact_present", s.verdict}};
}

}  // namespace

void write_stats_report(const std::filesystem::path& path,
                        const StylizedFactsReport& report,
                        const StatsSource& source) {
    nlohmann::json j;
    j["source"] = {{"description", source.description},
                   {"simulated", source.simulated}};
    if (source.simulated) {
        j["source"]["seed"] = source.seed;
        j["source"]["rng"] = kRngId;
    }
    j["sample_size"] = report.sample_size;
    j["significance"] = report.significance;
    j["skewness"] = to_json(report.skewness);
    j["kurtosis"] = to_json(report.kurtosis);
    j["ks"] = to_json(report.ks);
    nlohmann::json acf = nlohmann::json::object();
    for (const auto& [lag, stat] : report.sq_autocorr) {
        acf[std::to_string(lag)] = to_json(stat);
    }
    j["sq_autocorrelation"] = acf;
    j["notes"] =
        "Directional tests use normal asymptotics (SE sqrt(6/T), sqrt(24/T), "
        "1/sqrt(T)). The KS p-value uses the asymptotic Kolmogorov distribution "
        "with mean and variance estimated from the sample, which makes the test "
        "conservative.";

    auto out = open_for_writing(path);
    out << j.dump(2) << '\n';
    if (!out) {
        throw IoError("failed while writing '" + path.string() + "'");
    }
}

std::string render_stats_table(const StylizedFactsReport& report) {
    char line[160];
    std::string table;
    table += "statistic                          value       p-value     present\n";
    auto add = [&](const char* name, const TestedStatistic& s) {
        std::snprintf(line, sizeof(line), "%-32s %11.4f %11.4g     %s\n", name,
                      s.value, s.p_value, s.verdict ? "yes" : "no");
        table += line;
    };
    add("skewness (< 0)", report.skewness);
    add("kurtosis (> 3)", report.kurtosis);
    add("KS statistic (non-normal)", report.ks);
    for (const auto& [lag, stat] : report.sq_autocorr) {
        std::snprintf(line, sizeof(line), "sq. autocorrelation lag %zu (> 0)", lag);
        std::string name = line;
        add(name.c_str(), stat);
    }
    std::snprintf(line, sizeof(line),
                  "T = %zu, significance level = %g\n", report.sample_size,
                  report.significance);
    table += line;
    return table;
}

void write_garch_map_report(const std::filesystem::path& path,
                            const MicroParams& params, const GarchParams& mapped,
                            double margin, const std::string& market_type) {
    nlohmann::json j;
    j["market_type"] = market_type;
    j["omega"] = mapped.omega;
    j["f"] = mapped.f_value;
    j["alpha"] = mapped.alpha;
    j["beta"] = mapped.beta;
    j["stationarity_margin"] = margin;
    j["params"] = {
        {"rho", params.rho},       {"k", params.k},
        {"s_liquidity", params.s_liquidity},
        {"p1", params.p1},         {"p2", params.p2},
        {"lambda", params.lambda}, {"gamma", params.gamma},
        {"g_fn", to_string(params.g_fn)},
        {"h_fn", to_string(params.h_fn)},
    };

    auto out = open_for_writing(path);
    out << j.dump(2) << '\n';
    if (!out) {
        throw IoError("failed while writing '" + path.string() + "'");
    }
}

void write_sweep_csv(const std::filesystem::path& path, const SweepReport& report) {
    auto out = open_for_writing(path);
    out << "axis_value,omega,alpha,beta,median_skewness,median_kurtosis,"
           "median_ks,median_sq_autocorr1\n";
    for (const SweepRow& row : report.rows) {
        out << format_full(row.axis_value) << ',' << format_full(row.mapped.omega)
            << ',' << format_full(row.mapped.alpha) << ','
            << format_full(row.mapped.beta) << ','
            << format_full(row.median_skewness) << ','
            << format_full(row.median_kurtosis) << ','
            << format_full(row.median_ks) << ','
            << format_full(row.median_sq_autocorr1) << '\n';
    }
    if (!out) {
        throw IoError("failed while writing '" + path.string() + "'");
    }
}

void write_sweep_metadata(const std::filesystem::path& path,
                          const MicroParams& base, const SweepReport& report,
                          std::size_t length, std::size_t burn_in,
                          std::span<const std::uint64_t> seeds) {
    nlohmann::json j;
    j["rng"] = kRngId;
    j["axis"] = to_string(report.axis);
    nlohmann::json values = nlohmann::json::array();
    for (const SweepRow& row : report.rows) values.push_back(row.axis_value);
    j["values"] = values;
    j["length"] = length;
    j["burn_in"] = burn_in;
    j["seeds"] = std::vector<std::uint64_t>(seeds.begin(), seeds.end());
    j["base_params"] = {
        {"rho", base.rho},       {"k", base.k},
        {"s_liquidity", base.s_liquidity},
        {"p1", base.p1},         {"p2", base.p2},
        {"lambda", base.lambda}, {"gamma", base.gamma},
        {"g_fn", to_string(base.g_fn)},
        {"h_fn", to_string(base.h_fn)},
    };

    auto out = open_for_writing(path);
    out << j.dump(2) << '\n';
    if (!out) {
        throw IoError("failed while writing '" + path.string() + "'");
    }
}

}  // namespace micromarket

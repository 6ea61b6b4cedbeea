#include "micromarket/config.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace micromarket {

ExperimentConfig::ExperimentConfig() {
    seeds.resize(30);
    std::iota(seeds.begin(), seeds.end(), std::uint64_t{1});
}

void ExperimentConfig::validate() const {
    params.validate();
    if (length == 0) {
        throw std::invalid_argument("config: length must be >= 1");
    }
    if (seeds.empty()) {
        throw std::invalid_argument("config: seeds must be non-empty");
    }
    std::unordered_set<std::uint64_t> unique(seeds.begin(), seeds.end());
    if (unique.size() != seeds.size()) {
        throw std::invalid_argument("config: seeds must be distinct");
    }
    if (!(significance > 0.0 && significance < 1.0)) {
        throw std::invalid_argument("config: significance must be in (0, 1)");
    }
}

namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& key, std::string_view origin) {
    if (!j.is_number()) {
        throw ConfigError(std::string(origin) + ": key '" + key +
                          "' must be a number");
    }
    return j.get<double>();
}

std::size_t get_count(const json& j, const std::string& key, std::string_view origin) {
    if (!j.is_number_unsigned()) {
        throw ConfigError(std::string(origin) + ": key '" + key +
                          "' must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

std::string get_string(const json& j, const std::string& key, std::string_view origin) {
    if (!j.is_string()) {
        throw ConfigError(std::string(origin) + ": key '" + key +
                          "' must be a string");
    }
    return j.get<std::string>();
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text, std::string_view origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string(origin) + ": " + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError(std::string(origin) + ": top level must be an object");
    }

    ExperimentConfig cfg;
    for (const auto& [key, value] : root.items()) {
        if (key == "rho") {
            cfg.params.rho = get_number(value, key, origin);
        } else if (key == "k") {
            cfg.params.k = get_number(value, key, origin);
        } else if (key == "s_liquidity") {
            cfg.params.s_liquidity = get_number(value, key, origin);
        } else if (key == "p1") {
            cfg.params.p1 = get_number(value, key, origin);
        } else if (key == "p2") {
            cfg.params.p2 = get_number(value, key, origin);
        } else if (key == "lambda") {
            cfg.params.lambda = get_number(value, key, origin);
        } else if (key == "gamma") {
            cfg.params.gamma = get_number(value, key, origin);
        } else if (key == "g_fn") {
            try {
                cfg.params.g_fn = g_function_from_string(get_string(value, key, origin));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string(origin) + ": " + e.what());
            }
        } else if (key == "h_fn") {
            try {
                cfg.params.h_fn = h_function_from_string(get_string(value, key, origin));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string(origin) + ": " + e.what());
            }
        } else if (key == "length") {
            cfg.length = get_count(value, key, origin);
        } else if (key == "burn_in") {
            cfg.burn_in = get_count(value, key, origin);
        } else if (key == "seeds") {
            if (!value.is_array()) {
                throw ConfigError(std::string(origin) +
                                  ": key 'seeds' must be an array of integers");
            }
            cfg.seeds.clear();
            for (const auto& s : value) {
                if (!s.is_number_unsigned()) {
                    throw ConfigError(std::string(origin) +
                                      ": key 'seeds' must contain non-negative integers");
                }
                cfg.seeds.push_back(s.get<std::uint64_t>());
            }
        } else if (key == "significance") {
            cfg.significance = get_number(value, key, origin);
        } else if (key == "trajectory_csv") {
            cfg.trajectory_csv = get_string(value, key, origin);
        } else if (key == "metadata_json") {
            cfg.metadata_json = get_string(value, key, origin);
        } else if (key == "report_json") {
            cfg.report_json = get_string(value, key, origin);
        } else if (key == "sweep_csv") {
            cfg.sweep_csv = get_string(value, key, origin);
        } else {
            throw ConfigError(std::string(origin) + ": unknown config key '" + key +
                              "'");
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_json(buffer.str(), path.string());
}

}  // namespace micromarket

#include "spillnet/config.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "spillnet/errors.hpp"

namespace spillnet {

void RunConfig::validate() const {
    if (inputs.empty()) throw ConfigError("config: no inputs given");
    for (const auto& in : inputs) {
        if (in.ticker.empty()) throw ConfigError("config: input with empty ticker");
        if (!std::filesystem::exists(in.load_path())) {
            throw ConfigError("config: input file '" + in.load_path() + "' not found");
        }
    }
    if (start_date && end_date && *end_date < *start_date) {
        throw ConfigError("config: end date before start date");
    }
    if (horizon < 1) throw ConfigError("config: horizon must be >= 1");
    if (!lag_auto && lag < 1) throw ConfigError("config: lag must be >= 1");
    if (lag_auto && p_max < 1) throw ConfigError("config: p_max must be >= 1");
    if (!(kappa1 > 0.0 && kappa1 <= 1.0)) throw ConfigError("config: kappa1 must be in (0, 1]");
    if (!(kappa2 > 0.0 && kappa2 <= 1.0)) throw ConfigError("config: kappa2 must be in (0, 1]");
    if (prior_window < 2) throw ConfigError("config: prior_window must be >= 2");
    if (inflation < 0.0) throw ConfigError("config: inflation must be >= 0");
    if (!(edge_threshold >= 0.0 && edge_threshold <= 1.0)) {
        throw ConfigError("config: edge_threshold must be in [0, 1]");
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f.is_open()) throw ConfigError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config parse error: " + std::string(e.what()));
    }

    RunConfig cfg;
    try {
        const std::filesystem::path base = std::filesystem::path(path).parent_path();
        for (const auto& ij : j.value("inputs", nlohmann::json::array())) {
            InputSpec in;
            in.ticker = ij.at("ticker").get<std::string>();
            in.path = ij.at("path").get<std::string>();
            // relative input paths resolve against the config file
            in.resolved_path = std::filesystem::path(in.path).is_relative()
                                   ? (base / in.path).string()
                                   : in.path;
            in.date_column = ij.value("date_column", in.date_column);
            in.price_column = ij.value("price_column", in.price_column);
            in.date_format = ij.value("date_format", in.date_format);
            if (ij.contains("transform")) {
                in.transform = transform_from_string(ij["transform"].get<std::string>());
            }
            cfg.inputs.push_back(std::move(in));
        }
        if (j.contains("start_date")) cfg.start_date = parse_date(j["start_date"]);
        if (j.contains("end_date")) cfg.end_date = parse_date(j["end_date"]);
        if (j.contains("lag")) {
            if (j["lag"].is_string()) {
                if (j["lag"] != "auto") throw ConfigError("config: lag must be int or \"auto\"");
                cfg.lag_auto = true;
            } else {
                cfg.lag = j["lag"].get<int>();
            }
        }
        cfg.p_max = j.value("p_max", cfg.p_max);
        cfg.horizon = j.value("horizon", cfg.horizon);
        cfg.intercept = j.value("intercept", cfg.intercept);
        cfg.kappa1 = j.value("kappa1", cfg.kappa1);
        cfg.kappa2 = j.value("kappa2", cfg.kappa2);
        cfg.prior_window = j.value("prior_window", cfg.prior_window);
        cfg.inflation = j.value("inflation", cfg.inflation);
        cfg.include_prior_window = j.value("include_prior_window", cfg.include_prior_window);
        for (const auto& b : j.value("break_dates", nlohmann::json::array())) {
            cfg.break_dates.push_back(parse_date(b.get<std::string>()));
        }
        cfg.output_dir = j.value("output_dir", cfg.output_dir);
        cfg.edge_threshold = j.value("edge_threshold", cfg.edge_threshold);
        cfg.seed = j.value("seed", cfg.seed);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config field error: " + std::string(e.what()));
    }
    return cfg;
}

std::string manifest_json(const RunConfig& cfg, int resolved_lag,
                          const std::vector<std::string>& notes) {
    nlohmann::ordered_json j;
    j["schema"] = "spillnet.manifest.v1";
    j["inputs"] = nlohmann::ordered_json::array();
    for (const auto& in : cfg.inputs) {
        nlohmann::ordered_json ij;
        ij["ticker"] = in.ticker;
        ij["path"] = in.path;
        ij["date_column"] = in.date_column;
        ij["price_column"] = in.price_column;
        ij["date_format"] = in.date_format;
        ij["transform"] = to_string(in.transform);
        j["inputs"].push_back(std::move(ij));
    }
    if (cfg.start_date) j["start_date"] = cfg.start_date->iso();
    if (cfg.end_date) j["end_date"] = cfg.end_date->iso();
    j["lag"] = resolved_lag;
    j["lag_auto"] = cfg.lag_auto;
    if (cfg.lag_auto) j["p_max"] = cfg.p_max;
    j["horizon"] = cfg.horizon;
    j["intercept"] = cfg.intercept;
    j["kappa1"] = cfg.kappa1;
    j["kappa2"] = cfg.kappa2;
    j["prior_window"] = cfg.prior_window;
    j["inflation"] = cfg.inflation;
    j["include_prior_window"] = cfg.include_prior_window;
    j["break_dates"] = nlohmann::ordered_json::array();
    for (const auto& b : cfg.break_dates) j["break_dates"].push_back(b.iso());
    j["edge_threshold"] = cfg.edge_threshold;
    j["seed"] = cfg.seed;
    j["notes"] = notes;
    return j.dump(2) + "\n";
}

}  // namespace spillnet

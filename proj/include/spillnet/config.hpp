#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spillnet/dates.hpp"
#include "spillnet/panel.hpp"
#include "spillnet/tvp.hpp"

namespace spillnet {

/// One input price file and its column mapping.
struct InputSpec {
    std::string ticker;
    std::string path;           // as written in the config (echoed in manifests)
    std::string resolved_path;  // absolute location used for loading
    std::string date_column = "date";
    std::string price_column = "price";
    std::string date_format = "%Y-%m-%d";
    Transform transform = Transform::log_diff;

    const std::string& load_path() const { return resolved_path.empty() ? path : resolved_path; }
};

/// Declarative run configuration (JSON file plus CLI flag overrides).
struct RunConfig {
    std::vector<InputSpec> inputs;
    std::optional<Date> start_date;
    std::optional<Date> end_date;

    int lag = 1;           // ignored when lag_auto
    bool lag_auto = false;
    int p_max = 5;
    int horizon = 10;
    bool intercept = true;

    double kappa1 = 0.99;
    double kappa2 = 0.96;
    int prior_window = 200;
    double inflation = 4.0;
    bool include_prior_window = false;

    std::vector<Date> break_dates;
    std::string output_dir = "out";
    double edge_threshold = 0.75;
    std::uint64_t seed = 1;

    void validate() const;  // throws ConfigError
};

/// Loads a config file, applying defaults for absent keys.
RunConfig load_config(const std::string& path);

/// Resolved-parameter manifest: every default the user did not set appears
/// with its effective value. Deterministic (no timestamps).
std::string manifest_json(const RunConfig& cfg, int resolved_lag,
                          const std::vector<std::string>& notes);

}  // namespace spillnet

#include <CLI11.hpp>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

#include "spillnet/errors.hpp"
#include "spillnet/pipeline.hpp"
#include "spillnet/simulate.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::string output_dir;
    double horizon = -1;
    int lag = 0;
    bool lag_auto = false;
    int p_max = 0;
    double kappa1 = -1, kappa2 = -1, inflation = -1, edge_threshold = -1;
    int prior_window = 0;
    long long seed = -1;
};

void add_common_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("-c,--config", ov.config_path, "run configuration JSON")->required();
    cmd->add_option("-o,--output-dir", ov.output_dir, "output directory (overrides config)");
    cmd->add_option("--horizon", ov.horizon, "forecast horizon H");
    cmd->add_option("--lag", ov.lag, "VAR lag order");
    cmd->add_flag("--lag-auto", ov.lag_auto, "select lag by BIC up to p-max");
    cmd->add_option("--p-max", ov.p_max, "maximum lag for BIC selection");
    cmd->add_option("--kappa1", ov.kappa1, "state forgetting factor");
    cmd->add_option("--kappa2", ov.kappa2, "covariance decay factor");
    cmd->add_option("--prior-window", ov.prior_window, "prior OLS window (observations)");
    cmd->add_option("--inflation", ov.inflation, "prior covariance inflation (0 = off)");
    cmd->add_option("--edge-threshold", ov.edge_threshold, "bold-edge weight quantile");
    cmd->add_option("--seed", ov.seed, "seed echoed into the manifest");
}

spillnet::RunConfig resolve(const Overrides& ov) {
    auto cfg = spillnet::load_config(ov.config_path);
    if (!ov.output_dir.empty()) cfg.output_dir = ov.output_dir;
    if (const char* env = std::getenv("SPILLNET_OUTPUT_DIR")) {
        if (ov.output_dir.empty() && env[0] != '\0') cfg.output_dir = env;
    }
    if (ov.horizon > 0) cfg.horizon = static_cast<int>(ov.horizon);
    if (ov.lag > 0) {
        cfg.lag = ov.lag;
        cfg.lag_auto = false;
    }
    if (ov.lag_auto) cfg.lag_auto = true;
    if (ov.p_max > 0) cfg.p_max = ov.p_max;
    if (ov.kappa1 > 0) cfg.kappa1 = ov.kappa1;
    if (ov.kappa2 > 0) cfg.kappa2 = ov.kappa2;
    if (ov.prior_window > 0) cfg.prior_window = ov.prior_window;
    if (ov.inflation >= 0) cfg.inflation = ov.inflation;
    if (ov.edge_threshold >= 0) cfg.edge_threshold = ov.edge_threshold;
    if (ov.seed >= 0) cfg.seed = static_cast<std::uint64_t>(ov.seed);
    cfg.validate();
    return cfg;
}

int guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const spillnet::ConfigError& e) {
        std::cerr << "error:config: " << e.what() << '\n';
        return 2;
    } catch (const spillnet::DataError& e) {
        std::cerr << "error:data: " << e.what() << '\n';
        return 3;
    } catch (const spillnet::NumericError& e) {
        std::cerr << "error:numeric: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error:internal: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"volatility spillover connectedness toolkit"};
    app.require_subcommand(1);

    Overrides ov;
    auto* diag = app.add_subcommand("diagnostics", "descriptive stats, ADF, Chow tables");
    add_common_flags(diag, ov);
    auto* stat = app.add_subcommand("static", "full-sample VAR connectedness");
    add_common_flags(stat, ov);
    auto* dyn = app.add_subcommand("dynamic", "TVP-VAR dynamic connectedness");
    add_common_flags(dyn, ov);

    std::string report_path, net_out = "out";
    double net_threshold = 0.75;
    auto* net = app.add_subcommand("network", "re-emit graphs from a saved report JSON");
    net->add_option("report", report_path, "report JSON file")->required();
    net->add_option("-o,--output-dir", net_out, "output directory");
    net->add_option("--edge-threshold", net_threshold, "bold-edge weight quantile");

    std::string sim_dir = "fixtures";
    std::vector<std::string> sim_tickers;
    long long sim_rows = 600, sim_seed = 42;
    int sim_crypto = -1;
    std::string sim_start = "2015-01-06";
    auto* sim = app.add_subcommand("simulate", "generate seeded synthetic price fixtures");
    sim->add_option("-o,--output-dir", sim_dir, "fixture directory");
    sim->add_option("--tickers", sim_tickers, "ticker names")->required();
    sim->add_option("--rows", sim_rows, "price rows per series");
    sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_option("--crypto-column", sim_crypto,
                    "index of a high-volatility 7-day-calendar column (-1 = none)");
    sim->add_option("--start", sim_start, "first calendar date (ISO)");

    CLI11_PARSE(app, argc, argv);

    if (diag->parsed()) return guarded([&] { spillnet::run_diagnostics(resolve(ov)); });
    if (stat->parsed()) return guarded([&] { spillnet::run_static(resolve(ov)); });
    if (dyn->parsed()) return guarded([&] { spillnet::run_dynamic(resolve(ov)); });
    if (net->parsed()) {
        return guarded([&] { spillnet::run_network(report_path, net_threshold, net_out); });
    }
    if (sim->parsed()) {
        return guarded([&] {
            spillnet::FixtureSpec spec;
            spec.tickers = sim_tickers;
            spec.rows = sim_rows;
            spec.seed = static_cast<std::uint64_t>(sim_seed);
            spec.start = spillnet::parse_date(sim_start);
            spec.crypto_column = sim_crypto;
            for (const auto& f : spillnet::write_fixture_csvs(spec, sim_dir)) {
                std::cout << f << '\n';
            }
        });
    }
    return 0;
}

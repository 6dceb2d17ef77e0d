#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "spillnet/errors.hpp"
#include "spillnet/pipeline.hpp"
#include "spillnet/simulate.hpp"

using namespace spillnet;
namespace fs = std::filesystem;

namespace {

struct TempTree {
    fs::path root;
    explicit TempTree(const std::string& name) {
        root = fs::temp_directory_path() / name;
        fs::remove_all(root);
        fs::create_directories(root);
    }
    ~TempTree() { fs::remove_all(root); }
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.is_open());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunConfig fixture_config(const TempTree& tree, int n_tickers, Eigen::Index rows,
                         std::uint64_t seed) {
    FixtureSpec spec;
    for (int i = 0; i < n_tickers; ++i) spec.tickers.push_back("T" + std::to_string(i + 1));
    spec.rows = rows;
    spec.seed = seed;
    write_fixture_csvs(spec, (tree.root / "fx").string());

    RunConfig cfg;
    for (const auto& t : spec.tickers) {
        InputSpec in;
        in.ticker = t;
        in.path = (tree.root / "fx" / (t + ".csv")).string();
        cfg.inputs.push_back(in);
    }
    cfg.lag = 1;
    cfg.horizon = 10;
    cfg.prior_window = 100;
    cfg.output_dir = (tree.root / "out").string();
    return cfg;
}

}  // namespace

TEST_CASE("dynamic run with one break emits two segment reports plus the full one") {
    TempTree tree("sn_pipe_seg");
    auto cfg = fixture_config(tree, 3, 600, 7);
    cfg.break_dates = {parse_date("2016-06-01")};
    run_dynamic(cfg);

    CHECK(fs::exists(tree.root / "out" / "report_full.txt"));
    CHECK(fs::exists(tree.root / "out" / "report_segment1.txt"));
    CHECK(fs::exists(tree.root / "out" / "report_segment2.txt"));
    CHECK_FALSE(fs::exists(tree.root / "out" / "report_segment3.txt"));
    CHECK(fs::exists(tree.root / "out" / "network_segment2.dot"));
    CHECK(fs::exists(tree.root / "out" / "tvp_path.csv"));

    const auto manifest = nlohmann::json::parse(slurp(tree.root / "out" / "manifest.json"));
    CHECK(manifest["kappa1"] == 0.99);
    CHECK(manifest["kappa2"] == 0.96);
    CHECK(manifest["horizon"] == 10);
    CHECK(manifest["prior_window"] == 100);
    CHECK(manifest["lag"] == 1);
    CHECK(manifest["edge_threshold"] == 0.75);

    // per-date series cover the filtered range
    const auto tci_csv = slurp(tree.root / "out" / "tci_series.csv");
    CHECK(tci_csv.rfind("date,tci\n", 0) == 0);
}

TEST_CASE("single ticker: diagnostics pass, connectedness stages refuse") {
    TempTree tree("sn_pipe_single");
    auto cfg = fixture_config(tree, 2, 300, 9);
    cfg.inputs.resize(1);
    run_diagnostics(cfg);
    CHECK(fs::exists(tree.root / "out" / "descriptive_stats.txt"));

    CHECK_THROWS_WITH_AS(run_static(cfg),
                         "connectedness stages require at least two tickers (N >= 2)",
                         ConfigError);
    CHECK_THROWS_AS(run_dynamic(cfg), ConfigError);
}

TEST_CASE("chow rows outside the usable range are skipped with a note") {
    TempTree tree("sn_pipe_chow");
    auto cfg = fixture_config(tree, 2, 300, 11);
    cfg.break_dates = {parse_date("2030-01-01")};  // far beyond the panel
    run_diagnostics(cfg);
    const auto chow = slurp(tree.root / "out" / "chow_tests.csv");
    CHECK(chow.find("skipped: out of range") != std::string::npos);
}

TEST_CASE("config validation catches inverted date ranges") {
    TempTree tree("sn_pipe_dates");
    auto cfg = fixture_config(tree, 2, 300, 13);
    cfg.start_date = parse_date("2020-01-01");
    cfg.end_date = parse_date("2015-01-01");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("auto lag is recorded in the estimate snapshot header") {
    TempTree tree("sn_pipe_auto");
    auto cfg = fixture_config(tree, 3, 500, 15);
    cfg.lag_auto = true;
    cfg.p_max = 3;
    run_static(cfg);
    const auto snapshot = slurp(tree.root / "out" / "var_estimate.txt");
    CHECK(snapshot.find("p: ") != std::string::npos);
    const auto manifest = nlohmann::json::parse(slurp(tree.root / "out" / "manifest.json"));
    CHECK(manifest["lag_auto"] == true);
    CHECK(manifest["lag"].get<int>() >= 1);
}

TEST_CASE("output directory is created and re-runs overwrite deterministically") {
    TempTree tree("sn_pipe_rerun");
    auto cfg = fixture_config(tree, 3, 400, 17);
    cfg.output_dir = (tree.root / "deep" / "nested" / "out").string();
    run_static(cfg);
    const auto first = slurp(fs::path(cfg.output_dir) / "static_report.csv");
    run_static(cfg);
    const auto second = slurp(fs::path(cfg.output_dir) / "static_report.csv");
    CHECK(first == second);
}

TEST_CASE("config file parsing applies defaults and rejects junk") {
    TempTree tree("sn_pipe_cfg");
    const auto cfg_path = tree.root / "cfg.json";
    {
        std::ofstream f(cfg_path);
        f << R"({"inputs": [{"ticker": "A", "path": "missing.csv"},
                            {"ticker": "B", "path": "b.csv", "transform": "plain_diff",
                             "date_column": "Day", "date_format": "%d/%m/%Y"}],
                 "lag": "auto"})";
    }
    auto cfg = load_config(cfg_path.string());
    CHECK(cfg.lag_auto);
    CHECK(cfg.kappa1 == 0.99);
    CHECK(cfg.horizon == 10);
    CHECK(cfg.inputs[0].transform == Transform::log_diff);
    CHECK(cfg.inputs[1].transform == Transform::plain_diff);
    CHECK(cfg.inputs[1].date_column == "Day");
    CHECK(cfg.inputs[1].path == "b.csv");  // manifest keeps the path as written
    CHECK(cfg.inputs[1].load_path() == (tree.root / "b.csv").string());
    CHECK_THROWS_AS(cfg.validate(), ConfigError);  // input file missing

    {
        std::ofstream f(cfg_path);
        f << "{ not json";
    }
    CHECK_THROWS_AS(load_config(cfg_path.string()), ConfigError);
}

TEST_CASE("per-column transform reaches the panel") {
    TempTree tree("sn_pipe_transform");
    auto cfg = fixture_config(tree, 2, 60, 23);
    cfg.inputs[1].transform = Transform::plain_diff;
    const auto panel = load_panel(cfg);
    REQUIRE(panel.transforms.size() == 2);
    CHECK(panel.transforms[0] == Transform::log_diff);
    CHECK(panel.transforms[1] == Transform::plain_diff);

    // plain-diff column reproduces raw price differences
    const auto raw = load_csv(cfg.inputs[1].load_path(), "T2");
    CHECK(panel.values(0, 1) == doctest::Approx(raw.prices[1] - raw.prices[0]).epsilon(1e-12));
}

TEST_CASE("degenerate-forgetting dynamic run agrees with the static run") {
    TempTree tree("sn_pipe_cross");
    auto cfg = fixture_config(tree, 3, 3000, 27);
    cfg.kappa1 = 1.0;
    cfg.kappa2 = 1.0;
    cfg.inflation = 0.0;
    cfg.prior_window = 2800;  // kappa2 = 1 freezes S at S_0: estimate it well
    run_static(cfg);
    cfg.output_dir = (tree.root / "out_dyn").string();
    run_dynamic(cfg);

    // static TCI: last cell of the NET row in the report CSV
    double static_tci = 0.0;
    {
        std::istringstream csv(slurp(tree.root / "out" / "static_report.csv"));
        std::string line;
        while (std::getline(csv, line)) {
            if (line.rfind("NET,", 0) == 0) {
                static_tci = std::stod(line.substr(line.find_last_of(',') + 1));
            }
        }
    }
    // final dynamic TCI: last row of the per-date series
    double final_tci = 0.0;
    {
        std::istringstream csv(slurp(tree.root / "out_dyn" / "tci_series.csv"));
        std::string line, last;
        std::getline(csv, line);  // header
        while (std::getline(csv, line)) {
            if (!line.empty()) last = line;
        }
        final_tci = std::stod(last.substr(last.find(',') + 1));
    }
    CHECK(static_tci > 0.0);
    CHECK(std::abs(final_tci - static_tci) < 1.0);
}

TEST_CASE("dynamic pipeline accepts lag 2 configs") {
    TempTree tree("sn_pipe_lag2");
    auto cfg = fixture_config(tree, 2, 500, 25);
    cfg.lag = 2;
    run_dynamic(cfg);
    const auto path_csv = slurp(tree.root / "out" / "tvp_path.csv");
    CHECK(path_csv.find("# lag: 2") != std::string::npos);
    CHECK(path_csv.find("T1.phi2.T2") != std::string::npos);
    const auto manifest = nlohmann::json::parse(slurp(tree.root / "out" / "manifest.json"));
    CHECK(manifest["lag"] == 2);
}

TEST_CASE("network verb re-emits graphs from a saved report") {
    TempTree tree("sn_pipe_net");
    auto cfg = fixture_config(tree, 3, 400, 19);
    run_static(cfg);
    const auto report_path = tree.root / "out" / "static_report.json";
    run_network(report_path.string(), 0.5, (tree.root / "regen").string());
    CHECK(fs::exists(tree.root / "regen" / "static_report_network.dot"));
    const auto dot = slurp(tree.root / "regen" / "static_report_network.dot");
    CHECK(dot.rfind("digraph", 0) == 0);
}

TEST_CASE("tvp path csv echoes the configuration header") {
    TempTree tree("sn_pipe_path");
    auto cfg = fixture_config(tree, 2, 320, 21);
    run_dynamic(cfg);
    const auto path_csv = slurp(tree.root / "out" / "tvp_path.csv");
    CHECK(path_csv.find("# kappa1: 0.99") != std::string::npos);
    CHECK(path_csv.find("# prior_window: 100") != std::string::npos);
    CHECK(path_csv.find("T1.phi1.T2") != std::string::npos);
    CHECK(path_csv.find("S.T2.T1") != std::string::npos);
}

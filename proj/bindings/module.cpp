#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spillnet/adf.hpp"
#include "spillnet/chow.hpp"
#include "spillnet/connectedness.hpp"
#include "spillnet/errors.hpp"
#include "spillnet/network.hpp"
#include "spillnet/pipeline.hpp"
#include "spillnet/simulate.hpp"
#include "spillnet/stats.hpp"

namespace py = pybind11;
using namespace spillnet;

namespace {

std::vector<std::string> default_names(Eigen::Index n) {
    std::vector<std::string> out;
    for (Eigen::Index i = 0; i < n; ++i) out.push_back("V" + std::to_string(i + 1));
    return out;
}

ReturnPanel make_panel(const Eigen::MatrixXd& values, std::vector<std::string> tickers,
                       const std::string& start) {
    if (tickers.empty()) tickers = default_names(values.cols());
    return panel_from_returns(values, tickers, parse_date(start));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "volatility spillover connectedness toolkit (C++ core)";

    py::register_exception<ConfigError>(m, "SpillnetConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "SpillnetDataError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "SpillnetNumericError", PyExc_ArithmeticError);

    py::enum_<Transform>(m, "Transform")
        .value("log_diff", Transform::log_diff)
        .value("plain_diff", Transform::plain_diff);

    py::enum_<DeterministicSpec>(m, "DeterministicSpec")
        .value("constant", DeterministicSpec::constant)
        .value("constant_trend", DeterministicSpec::constant_trend)
        .value("none", DeterministicSpec::none);

    py::class_<RawSeries>(m, "RawSeries")
        .def_readonly("ticker", &RawSeries::ticker)
        .def_readonly("rejected_rows", &RawSeries::rejected_rows)
        .def_property_readonly("dates",
                               [](const RawSeries& s) {
                                   std::vector<std::string> out;
                                   for (const auto& d : s.dates) out.push_back(d.iso());
                                   return out;
                               })
        .def_readonly("prices", &RawSeries::prices)
        .def("__len__", &RawSeries::size);

    py::class_<ReturnPanel>(m, "ReturnPanel")
        .def_readonly("tickers", &ReturnPanel::tickers)
        .def_readonly("values", &ReturnPanel::values)
        .def_property_readonly("dates",
                               [](const ReturnPanel& p) {
                                   std::vector<std::string> out;
                                   for (const auto& d : p.dates) out.push_back(d.iso());
                                   return out;
                               })
        .def("__len__", [](const ReturnPanel& p) { return p.rows(); });

    m.def("load_csv",
          [](const std::string& path, const std::string& ticker, const std::string& date_column,
             const std::string& price_column, const std::string& date_format) {
              return load_csv(path, ticker, {date_column, price_column, date_format});
          },
          py::arg("path"), py::arg("ticker"), py::arg("date_column") = "date",
          py::arg("price_column") = "price", py::arg("date_format") = "%Y-%m-%d");

    m.def("build_panel",
          [](const std::vector<RawSeries>& series, Transform mode) {
              return to_returns(series.size() == 1 ? from_single(series.front()) : align(series),
                                mode);
          },
          py::arg("series"), py::arg("mode") = Transform::log_diff,
          "inner-join alignment followed by differencing");

    m.def("make_panel", &make_panel, py::arg("values"),
          py::arg("tickers") = std::vector<std::string>{}, py::arg("start") = "2015-01-06",
          "wraps a T x N return matrix as a panel on a weekday calendar");

    py::class_<DescriptiveStats>(m, "DescriptiveStats")
        .def_readonly("mean", &DescriptiveStats::mean)
        .def_readonly("median", &DescriptiveStats::median)
        .def_readonly("sd", &DescriptiveStats::sd)
        .def_readonly("skewness", &DescriptiveStats::skewness)
        .def_readonly("excess_kurtosis", &DescriptiveStats::excess_kurtosis)
        .def_readonly("jb_stat", &DescriptiveStats::jb_stat)
        .def_readonly("jb_pvalue", &DescriptiveStats::jb_pvalue)
        .def_readonly("q2_stat", &DescriptiveStats::q2_stat)
        .def_readonly("q2_lags", &DescriptiveStats::q2_lags)
        .def_readonly("q2_pvalue", &DescriptiveStats::q2_pvalue);

    m.def("describe", &describe, py::arg("series"), py::arg("q2_lags") = 20);
    m.def("ljung_box",
          [](const Eigen::VectorXd& series, int lags, bool on_squares) {
              const auto r = ljung_box(series, lags, on_squares);
              return std::make_pair(r.stat, r.pvalue);
          },
          py::arg("series"), py::arg("lags"), py::arg("on_squares") = false);

    py::class_<AdfResult>(m, "AdfResult")
        .def_readonly("statistic", &AdfResult::statistic)
        .def_readonly("chosen_lag", &AdfResult::chosen_lag)
        .def_readonly("pvalue", &AdfResult::pvalue);
    m.def("adf_test", &adf_test, py::arg("series"), py::arg("max_lag") = -1,
          py::arg("spec") = DeterministicSpec::constant);

    py::class_<ChowResult>(m, "ChowResult")
        .def_readonly("f_stat", &ChowResult::f_stat)
        .def_readonly("df_num", &ChowResult::df_num)
        .def_readonly("df_den", &ChowResult::df_den)
        .def_readonly("pvalue", &ChowResult::pvalue);
    m.def("chow_test", &chow_test, py::arg("y"), py::arg("x"), py::arg("break_index"));

    py::class_<VarEstimate>(m, "VarEstimate")
        .def_readonly("lag_order", &VarEstimate::lag_order)
        .def_readonly("tickers", &VarEstimate::tickers)
        .def_readonly("phi", &VarEstimate::phi)
        .def_readonly("intercept", &VarEstimate::intercept)
        .def_readonly("sigma", &VarEstimate::sigma)
        .def_readonly("residuals", &VarEstimate::residuals)
        .def_readonly("bic", &VarEstimate::bic)
        .def_readonly("companion_radius", &VarEstimate::companion_radius)
        .def_readonly("stable", &VarEstimate::stable);

    m.def("fit_var", &fit_var, py::arg("panel"), py::arg("p"), py::arg("intercept") = true);
    m.def("select_lag", &select_lag, py::arg("panel"), py::arg("p_max"),
          py::arg("intercept") = true);
    m.def("ma_coefficients",
          [](const VarEstimate& est, int horizons) { return ma_coefficients(est, horizons).psi; },
          py::arg("estimate"), py::arg("horizons"));

    py::class_<FevdTable>(m, "FevdTable")
        .def_readonly("horizon", &FevdTable::horizon)
        .def_readonly("raw", &FevdTable::raw)
        .def_readonly("normalized", &FevdTable::normalized);
    m.def("gfevd", &gfevd, py::arg("estimate"), py::arg("horizon"));

    py::class_<ConnectednessReport>(m, "ConnectednessReport")
        .def_readonly("tickers", &ConnectednessReport::tickers)
        .def_readonly("shares", &ConnectednessReport::shares)
        .def_readonly("receiver", &ConnectednessReport::receiver)
        .def_readonly("giver", &ConnectednessReport::giver)
        .def_readonly("inc_own", &ConnectednessReport::inc_own)
        .def_readonly("net", &ConnectednessReport::net)
        .def_readonly("npt", &ConnectednessReport::npt)
        .def_readonly("tci", &ConnectednessReport::tci)
        .def_readonly("npdc", &ConnectednessReport::npdc)
        .def_readonly("pci", &ConnectednessReport::pci)
        .def_readonly("pii", &ConnectednessReport::pii)
        .def_readonly("label", &ConnectednessReport::label);

    m.def("indices",
          [](const FevdTable& f, std::vector<std::string> tickers, const std::string& label) {
              if (tickers.empty()) tickers = default_names(f.normalized.rows());
              return indices(f, tickers, label);
          },
          py::arg("fevd"), py::arg("tickers") = std::vector<std::string>{},
          py::arg("label") = "");
    m.def("render_report_text", &render_report_text);
    m.def("render_report_csv", &render_report_csv);

    py::class_<TvpConfig>(m, "TvpConfig")
        .def(py::init<>())
        .def_readwrite("kappa1", &TvpConfig::kappa1)
        .def_readwrite("kappa2", &TvpConfig::kappa2)
        .def_readwrite("prior_window", &TvpConfig::prior_window)
        .def_readwrite("lag", &TvpConfig::lag)
        .def_readwrite("inflation", &TvpConfig::inflation)
        .def_readwrite("include_prior_window", &TvpConfig::include_prior_window);

    py::class_<TvpPath>(m, "TvpPath")
        .def_readonly("tickers", &TvpPath::tickers)
        .def_readonly("lag", &TvpPath::lag)
        .def_property_readonly("dates",
                               [](const TvpPath& p) {
                                   std::vector<std::string> out;
                                   for (const auto& d : p.dates) out.push_back(d.iso());
                                   return out;
                               })
        .def_readonly("coeffs", &TvpPath::coeffs)
        .def_readonly("resid_cov", &TvpPath::resid_cov)
        .def_readonly("state_cov", &TvpPath::state_cov)
        .def("__len__", &TvpPath::size);

    m.def("init_prior", [](const ReturnPanel& panel, const TvpConfig& cfg) {
        const auto prior = init_prior(panel, cfg);
        return std::make_tuple(prior.mean, prior.state_cov, prior.resid_cov);
    });
    m.def("tvp_filter", &filter, py::arg("panel"), py::arg("config"));
    m.def("snapshot", &snapshot, py::arg("path"), py::arg("t"));

    py::class_<DynamicConnectedness>(m, "DynamicConnectedness")
        .def_readonly("per_date", &DynamicConnectedness::per_date)
        .def_readonly("average", &DynamicConnectedness::average)
        .def_readonly("failed_dates", &DynamicConnectedness::failed_dates);
    m.def("dynamic_indices", &dynamic_indices, py::arg("path"), py::arg("horizon"));

    py::class_<SpilloverNetwork>(m, "SpilloverNetwork")
        .def_property_readonly("nodes",
                               [](const SpilloverNetwork& n) {
                                   py::list out;
                                   for (const auto& node : n.nodes) {
                                       py::dict d;
                                       d["ticker"] = node.ticker;
                                       d["role"] = node.giver ? "giver" : "receiver";
                                       d["size"] = node.size;
                                       d["net"] = node.net;
                                       out.append(std::move(d));
                                   }
                                   return out;
                               })
        .def_property_readonly("edges", [](const SpilloverNetwork& n) {
            py::list out;
            for (const auto& edge : n.edges) {
                py::dict d;
                d["source"] = edge.source;
                d["target"] = edge.target;
                d["weight"] = edge.weight;
                d["emphasis"] = edge.bold ? "bold" : "fine";
                out.append(std::move(d));
            }
            return out;
        });

    m.def("build_network", &build_network, py::arg("report"), py::arg("edge_threshold") = 0.75);
    m.def("emit_dot", &emit_dot);
    m.def("emit_json", &emit_json);

    m.def("simulate_var",
          [](const std::vector<Eigen::MatrixXd>& phi, const Eigen::MatrixXd& sigma,
             Eigen::Index t, std::uint64_t seed, Eigen::Index burn_in) {
              Rng rng(seed);
              return simulate_var(phi, Eigen::VectorXd::Zero(sigma.rows()), sigma, t, rng,
                                  burn_in);
          },
          py::arg("phi"), py::arg("sigma"), py::arg("t"), py::arg("seed") = 42,
          py::arg("burn_in") = 200);
    m.def("random_stable_var",
          [](int n, int p, double radius, std::uint64_t seed) {
              Rng rng(seed);
              return random_stable_var(n, p, radius, rng);
          },
          py::arg("n"), py::arg("p"), py::arg("radius") = 0.7, py::arg("seed") = 42);
    m.def("random_covariance",
          [](int n, std::uint64_t seed) {
              Rng rng(seed);
              return random_covariance(n, rng);
          },
          py::arg("n"), py::arg("seed") = 42);

    m.def("run_diagnostics",
          [](const std::string& config_path) { run_diagnostics(load_config(config_path)); });
    m.def("run_static",
          [](const std::string& config_path) { run_static(load_config(config_path)); });
    m.def("run_dynamic",
          [](const std::string& config_path) { run_dynamic(load_config(config_path)); });
}

#include "spillnet/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spillnet/adf.hpp"
#include "spillnet/chow.hpp"
#include "spillnet/errors.hpp"
#include "spillnet/network.hpp"
#include "spillnet/stats.hpp"
#include "spillnet/var.hpp"

namespace spillnet {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path);
    if (!f.is_open()) throw DataError("cannot write '" + path.string() + "'");
    f << content;
}

std::string fixed(double v, int decimals) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string full17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string pad(const std::string& s, int w) {
    return s.size() >= static_cast<std::size_t>(w)
               ? " " + s
               : std::string(static_cast<std::size_t>(w) - s.size(), ' ') + s;
}

struct DiagnosticsTables {
    std::string desc_text, desc_csv;
    std::string adf_text, adf_csv;
    std::string chow_text, chow_csv;
    std::vector<std::string> notes;
};

DiagnosticsTables build_diagnostics(const ReturnPanel& panel,
                                    const std::vector<Date>& break_dates) {
    DiagnosticsTables out;
    const Eigen::Index n = panel.cols();
    const int w = 14;

    {
        std::ostringstream txt, csv;
        txt << pad("Variable", w) << pad("Mean", w) << pad("Median", w) << pad("SD", w)
            << pad("Skewness", w) << pad("ExKurtosis", w) << pad("J-B test", w)
            << pad("Q2(20)", w) << '\n';
        csv << "variable,mean,median,sd,skewness,excess_kurtosis,jb_stat,jb_pvalue,"
               "q2_stat,q2_lags,q2_pvalue\n";
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& name = panel.tickers[static_cast<std::size_t>(j)];
            const auto s = describe(panel.values.col(j));
            txt << pad(name, w) << pad(fixed(s.mean, 3), w) << pad(fixed(s.median, 4), w)
                << pad(fixed(s.sd, 4), w) << pad(fixed(s.skewness, 3), w)
                << pad(fixed(s.excess_kurtosis, 3), w)
                << pad(fixed(s.jb_stat, 3) + significance_stars(s.jb_pvalue), w)
                << pad(fixed(s.q2_stat, 3) + significance_stars(s.q2_pvalue), w) << '\n';
            csv << name << ',' << full17(s.mean) << ',' << full17(s.median) << ','
                << full17(s.sd) << ',' << full17(s.skewness) << ','
                << full17(s.excess_kurtosis) << ',' << full17(s.jb_stat) << ','
                << full17(s.jb_pvalue) << ',' << full17(s.q2_stat) << ',' << s.q2_lags << ','
                << full17(s.q2_pvalue) << '\n';
        }
        txt << "(. p<=0.1, * p<=0.05, ** p<=0.01, *** p<=0.005; kurtosis is excess)\n";
        out.desc_text = txt.str();
        out.desc_csv = csv.str();
    }

    {
        std::ostringstream txt, csv;
        txt << pad("Ticker", w) << pad("ADF (Lag)", w + 6) << pad("p-value", w) << '\n';
        csv << "ticker,statistic,lag,pvalue\n";
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& name = panel.tickers[static_cast<std::size_t>(j)];
            const auto r = adf_test(panel.values.col(j));
            txt << pad(name, w)
                << pad(fixed(r.statistic, 2) + significance_stars(r.pvalue) + "(" +
                           std::to_string(r.chosen_lag) + ")",
                       w + 6)
                << pad(r.pvalue < 5e-4 ? "0.000" : fixed(r.pvalue, 3), w) << '\n';
            csv << name << ',' << full17(r.statistic) << ',' << r.chosen_lag << ','
                << full17(r.pvalue) << '\n';
        }
        txt << "(. p<=0.1, * p<=0.05, ** p<=0.01, *** p<=0.005)\n";
        out.adf_text = txt.str();
        out.adf_csv = csv.str();
    }

    {
        std::ostringstream txt, csv;
        txt << pad("Ticker", w) << pad("Break", w) << pad("F", w) << pad("df", w)
            << pad("p-value", w) << '\n';
        csv << "ticker,break_date,f_stat,df_num,df_den,pvalue,status\n";
        for (const auto& b : break_dates) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto& name = panel.tickers[static_cast<std::size_t>(j)];
                // AR(1) regression per series: r_t on [1, r_{t-1}].
                const Eigen::Index t = panel.rows() - 1;
                Eigen::VectorXd y = panel.values.col(j).tail(t);
                Eigen::MatrixXd x(t, 2);
                x.col(0).setOnes();
                x.col(1) = panel.values.col(j).head(t);
                Eigen::Index break_index = -1;
                for (Eigen::Index i = 0; i < t; ++i) {
                    if (panel.dates[static_cast<std::size_t>(i + 1)] >= b) {
                        break_index = i;
                        break;
                    }
                }
                if (break_index <= 2 || break_index < 0 || t - break_index <= 2) {
                    txt << pad(name, w) << pad(b.iso(), w)
                        << pad("skipped: out of range", 3 * w) << '\n';
                    csv << name << ',' << b.iso() << ",,,,,skipped: out of range\n";
                    out.notes.push_back("chow " + name + " @ " + b.iso() +
                                        ": skipped, break outside usable range");
                    continue;
                }
                auto r = chow_test(y, x, break_index);
                r.break_date = b;
                txt << pad(name, w) << pad(b.iso(), w)
                    << pad(fixed(r.f_stat, 3) + significance_stars(r.pvalue), w)
                    << pad("(" + std::to_string(r.df_num) + "," + std::to_string(r.df_den) + ")",
                           w)
                    << pad(fixed(r.pvalue, 4), w) << '\n';
                csv << name << ',' << b.iso() << ',' << full17(r.f_stat) << ',' << r.df_num
                    << ',' << r.df_den << ',' << full17(r.pvalue) << ",ok\n";
            }
        }
        txt << "(. p<=0.1, * p<=0.05, ** p<=0.01, *** p<=0.005; AR(1) regression)\n";
        out.chow_text = txt.str();
        out.chow_csv = csv.str();
    }
    return out;
}

void write_diagnostics(const fs::path& dir, const DiagnosticsTables& tables) {
    write_file(dir / "descriptive_stats.txt", tables.desc_text);
    write_file(dir / "descriptive_stats.csv", tables.desc_csv);
    write_file(dir / "adf_tests.txt", tables.adf_text);
    write_file(dir / "adf_tests.csv", tables.adf_csv);
    write_file(dir / "chow_tests.txt", tables.chow_text);
    write_file(dir / "chow_tests.csv", tables.chow_csv);
}

void write_report_files(const fs::path& dir, const std::string& report_stem,
                        const std::string& network_stem, const ConnectednessReport& report,
                        double edge_threshold) {
    write_file(dir / (report_stem + ".txt"), render_report_text(report));
    write_file(dir / (report_stem + ".csv"), render_report_csv(report));
    write_file(dir / (report_stem + "_pairwise.csv"), render_pairwise_csv(report));
    write_file(dir / (report_stem + ".json"), report_to_json(report));
    const auto net = build_network(report, edge_threshold);
    write_file(dir / (network_stem + ".dot"), emit_dot(net));
    write_file(dir / (network_stem + ".json"), emit_json(net));
}

int resolve_lag(const RunConfig& cfg, const ReturnPanel& panel) {
    return cfg.lag_auto ? select_lag(panel, cfg.p_max, cfg.intercept) : cfg.lag;
}

void require_multivariate(const ReturnPanel& panel) {
    if (panel.cols() < 2) {
        throw ConfigError("connectedness stages require at least two tickers (N >= 2)");
    }
}

fs::path prepare_output_dir(const RunConfig& cfg) {
    fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

ReturnPanel load_panel(const RunConfig& cfg) {
    cfg.validate();
    std::vector<RawSeries> series;
    std::vector<Transform> transforms;
    for (const auto& in : cfg.inputs) {
        CsvSchema schema{in.date_column, in.price_column, in.date_format};
        RawSeries s = load_csv(in.load_path(), in.ticker, schema);
        if (cfg.start_date || cfg.end_date) {
            const Date lo = cfg.start_date.value_or(Date{INT32_MIN});
            const Date hi = cfg.end_date.value_or(Date{INT32_MAX});
            s = clip_series(s, lo, hi);
            if (s.size() == 0) {
                throw DataError("series '" + in.ticker + "' empty after date clipping");
            }
        }
        series.push_back(std::move(s));
        transforms.push_back(in.transform);
    }
    const AlignedPrices aligned =
        series.size() == 1 ? from_single(series.front()) : align(series);
    return to_returns(aligned, transforms);
}

void run_diagnostics(const RunConfig& cfg) {
    const auto panel = load_panel(cfg);
    const auto dir = prepare_output_dir(cfg);
    const auto tables = build_diagnostics(panel, cfg.break_dates);
    write_diagnostics(dir, tables);
    write_file(dir / "manifest.json", manifest_json(cfg, cfg.lag_auto ? 0 : cfg.lag,
                                                    tables.notes));
}

void run_static(const RunConfig& cfg) {
    const auto panel = load_panel(cfg);
    require_multivariate(panel);
    const auto dir = prepare_output_dir(cfg);

    const auto tables = build_diagnostics(panel, cfg.break_dates);
    write_diagnostics(dir, tables);
    write_panel_csv(panel, (dir / "panel.csv").string());

    const int lag = resolve_lag(cfg, panel);
    const auto est = fit_var(panel, lag, cfg.intercept);
    write_file(dir / "var_estimate.txt", to_snapshot_text(est));

    const auto fevd = gfevd(est, cfg.horizon);
    const auto report = indices(fevd, panel.tickers, "static full sample");
    write_report_files(dir, "static_report", "static_network", report, cfg.edge_threshold);

    auto notes = tables.notes;
    notes.push_back("static lag: " + std::to_string(lag));
    write_file(dir / "manifest.json", manifest_json(cfg, lag, notes));
}

void run_dynamic(const RunConfig& cfg) {
    const auto panel = load_panel(cfg);
    require_multivariate(panel);
    const auto dir = prepare_output_dir(cfg);
    write_panel_csv(panel, (dir / "panel.csv").string());

    const int lag = resolve_lag(cfg, panel);
    TvpConfig tvp_cfg;
    tvp_cfg.kappa1 = cfg.kappa1;
    tvp_cfg.kappa2 = cfg.kappa2;
    tvp_cfg.prior_window = cfg.prior_window;
    tvp_cfg.lag = lag;
    tvp_cfg.inflation = cfg.inflation;
    tvp_cfg.include_prior_window = cfg.include_prior_window;

    const auto path = filter(panel, tvp_cfg);
    write_path_csv(path, (dir / "tvp_path.csv").string());

    const auto dyn = dynamic_indices(path, cfg.horizon);

    // Per-date index series behind the figures.
    const Eigen::Index n = panel.cols();
    {
        std::ostringstream tci, net, npdc;
        tci << "date,tci\n";
        net << "date";
        for (const auto& t : panel.tickers) net << ',' << t;
        net << '\n';
        npdc << "date";
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j)
                npdc << ',' << panel.tickers[static_cast<std::size_t>(i)] << "->"
                     << panel.tickers[static_cast<std::size_t>(j)];
        npdc << '\n';
        for (const auto& rep : dyn.per_date) {
            const std::string d = rep.date->iso();
            tci << d << ',' << sig12(rep.tci) << '\n';
            net << d;
            for (Eigen::Index j = 0; j < n; ++j) net << ',' << sig12(rep.net[j]);
            net << '\n';
            npdc << d;
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = i + 1; j < n; ++j) npdc << ',' << sig12(rep.npdc(i, j));
            npdc << '\n';
        }
        write_file(dir / "tci_series.csv", tci.str());
        write_file(dir / "net_series.csv", net.str());
        write_file(dir / "npdc_series.csv", npdc.str());
    }

    auto full_avg = dyn.average;
    full_avg.label = "dynamic average, full sample";
    write_report_files(dir, "report_full", "network_full", full_avg, cfg.edge_threshold);

    // Segment averages slice the single full-sample path by date.
    std::vector<Date> breaks = cfg.break_dates;
    std::sort(breaks.begin(), breaks.end());
    if (!breaks.empty()) {
        std::vector<std::vector<const ConnectednessReport*>> buckets(breaks.size() + 1);
        for (const auto& rep : dyn.per_date) {
            std::size_t seg = 0;
            while (seg < breaks.size() && *rep.date >= breaks[seg]) ++seg;
            buckets[seg].push_back(&rep);
        }
        for (std::size_t s = 0; s < buckets.size(); ++s) {
            if (buckets[s].empty()) {
                throw DataError("break dates leave segment " + std::to_string(s + 1) +
                                " without any filtered dates");
            }
            const std::string label =
                "dynamic average, segment " + std::to_string(s + 1) + " (" +
                buckets[s].front()->date->iso() + " .. " + buckets[s].back()->date->iso() + ")";
            const auto avg = average_reports(buckets[s], label);
            write_report_files(dir, "report_segment" + std::to_string(s + 1),
                               "network_segment" + std::to_string(s + 1), avg,
                               cfg.edge_threshold);
        }
    }

    std::vector<std::string> notes;
    notes.push_back("dynamic lag: " + std::to_string(lag));
    notes.push_back("filtered dates: " + std::to_string(path.size()));
    notes.push_back("failed dates: " + std::to_string(dyn.failed_dates));
    for (const auto& fmsg : dyn.failures) notes.push_back("decomposition failure: " + fmsg);
    write_file(dir / "manifest.json", manifest_json(cfg, lag, notes));
}

void run_network(const std::string& report_json_path, double edge_threshold,
                 const std::string& output_dir) {
    std::ifstream f(report_json_path);
    if (!f.is_open()) throw DataError("cannot open '" + report_json_path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    const auto report = report_from_json(buf.str());
    const auto net = build_network(report, edge_threshold);

    fs::path dir(output_dir);
    fs::create_directories(dir);
    const std::string stem = fs::path(report_json_path).stem().string();
    write_file(dir / (stem + "_network.dot"), emit_dot(net));
    write_file(dir / (stem + "_network.json"), emit_json(net));
}

}  // namespace spillnet

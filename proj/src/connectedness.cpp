#include "spillnet/connectedness.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "spillnet/errors.hpp"

namespace spillnet {

namespace {

ConnectednessReport from_shares(const Eigen::MatrixXd& l,
                                const std::vector<std::string>& tickers,
                                const std::string& label) {
    const Eigen::Index n = l.rows();
    ConnectednessReport r;
    r.tickers = tickers;
    r.shares = l;
    r.label = label;

    r.receiver = 100.0 * (l.rowwise().sum() - l.diagonal());
    r.giver = 100.0 * (l.colwise().sum().transpose() - l.diagonal());
    r.inc_own = r.giver + 100.0 * l.diagonal();
    r.net = r.giver - r.receiver;
    r.tci = r.receiver.mean();

    r.npdc = 100.0 * (l.transpose() - l);
    r.pci.resize(n, n);
    r.pii.resize(n, n);
    r.npt = Eigen::VectorXi::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double cross = l(i, j) + l(j, i);
            const double total = l(i, i) + l(j, j) + cross;
            r.pci(i, j) = (i == j || !(total > 0.0)) ? 0.0 : cross / total;
            r.pii(i, j) = (i == j || !(cross > 0.0)) ? 0.0 : (l(i, j) - l(j, i)) / cross;
            if (r.npdc(i, j) > 0.0) ++r.npt[i];
        }
    }
    return r;
}

}  // namespace

ConnectednessReport indices(const FevdTable& fevd, const std::vector<std::string>& tickers,
                            const std::string& label) {
    if (static_cast<Eigen::Index>(tickers.size()) != fevd.normalized.rows()) {
        throw ConfigError("indices: ticker count does not match decomposition size");
    }
    return from_shares(fevd.normalized, tickers, label);
}

DynamicConnectedness dynamic_indices(const TvpPath& path, int horizon) {
    if (path.size() == 0) throw ConfigError("dynamic_indices: empty path");
    DynamicConnectedness out;
    out.per_date.reserve(path.size());

    Eigen::MatrixXd sum;
    std::size_t ok = 0;
    for (std::size_t t = 0; t < path.size(); ++t) {
        try {
            const auto est = snapshot(path, t);
            const auto fevd = gfevd(est, horizon);
            auto rep = from_shares(fevd.normalized, path.tickers, path.dates[t].iso());
            rep.date = path.dates[t];
            if (sum.size() == 0) sum = Eigen::MatrixXd::Zero(fevd.normalized.rows(),
                                                             fevd.normalized.cols());
            sum += fevd.normalized;
            ++ok;
            out.per_date.push_back(std::move(rep));
        } catch (const std::exception& e) {
            ++out.failed_dates;
            out.failures.push_back(path.dates[t].iso() + ": " + e.what());
        }
    }
    if (ok == 0 || static_cast<double>(out.failed_dates) >
                       0.01 * static_cast<double>(path.size())) {
        throw NumericError("dynamic_indices: " + std::to_string(out.failed_dates) + " of " +
                           std::to_string(path.size()) + " dates failed to decompose");
    }
    out.average = from_shares(sum / static_cast<double>(ok), path.tickers, "average");
    return out;
}

ConnectednessReport average_reports(const std::vector<const ConnectednessReport*>& reports,
                                    const std::string& label) {
    if (reports.empty()) throw ConfigError("average_reports: no reports given");
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(reports.front()->shares.rows(),
                                                reports.front()->shares.cols());
    for (const auto* r : reports) sum += r->shares;
    return from_shares(sum / static_cast<double>(reports.size()),
                       reports.front()->tickers, label);
}

namespace {

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string render_report_text(const ConnectednessReport& r) {
    const Eigen::Index n = r.n_vars();
    const int w = 10;
    std::ostringstream out;
    auto cell = [&](const std::string& s) {
        out << std::string(s.size() >= w ? 1 : w - s.size(), ' ') << s;
    };

    if (!r.label.empty()) out << "segment: " << r.label << '\n';
    cell("");
    for (const auto& t : r.tickers) cell(t);
    cell("Receiver");
    out << '\n';
    for (Eigen::Index i = 0; i < n; ++i) {
        cell(r.tickers[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < n; ++j) cell(fixed2(100.0 * r.shares(i, j)));
        cell(fixed2(r.receiver[i]));
        out << '\n';
    }
    cell("Giver");
    for (Eigen::Index j = 0; j < n; ++j) cell(fixed2(r.giver[j]));
    cell(fixed2(r.giver.sum()));
    out << '\n';
    cell("Inc.Own");
    for (Eigen::Index j = 0; j < n; ++j) cell(fixed2(r.inc_own[j]));
    cell("TCI");
    out << '\n';
    cell("NET");
    for (Eigen::Index j = 0; j < n; ++j) cell(fixed2(r.net[j]));
    cell(fixed2(r.tci));
    out << '\n';
    cell("NPT");
    for (Eigen::Index j = 0; j < n; ++j) cell(std::to_string(r.npt[j]));
    cell("");
    out << '\n';
    return out.str();
}

std::string render_report_csv(const ConnectednessReport& r) {
    const Eigen::Index n = r.n_vars();
    std::ostringstream out;
    out << "row";
    for (const auto& t : r.tickers) out << ',' << t;
    out << ",Receiver\n";
    for (Eigen::Index i = 0; i < n; ++i) {
        out << r.tickers[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j) out << ',' << full(100.0 * r.shares(i, j));
        out << ',' << full(r.receiver[i]) << '\n';
    }
    out << "Giver";
    for (Eigen::Index j = 0; j < n; ++j) out << ',' << full(r.giver[j]);
    out << ',' << full(r.giver.sum()) << '\n';
    out << "Inc.Own";
    for (Eigen::Index j = 0; j < n; ++j) out << ',' << full(r.inc_own[j]);
    out << ",TCI\n";
    out << "NET";
    for (Eigen::Index j = 0; j < n; ++j) out << ',' << full(r.net[j]);
    out << ',' << full(r.tci) << '\n';
    out << "NPT";
    for (Eigen::Index j = 0; j < n; ++j) out << ',' << r.npt[j];
    out << ",\n";
    return out.str();
}

std::string render_pairwise_csv(const ConnectednessReport& r) {
    const Eigen::Index n = r.n_vars();
    std::ostringstream out;
    out << "matrix,from,to,value\n";
    const struct {
        const char* name;
        const Eigen::MatrixXd& m;
    } blocks[] = {{"npdc", r.npdc}, {"pci", r.pci}, {"pii", r.pii}};
    for (const auto& b : blocks) {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (i == j) continue;
                out << b.name << ',' << r.tickers[static_cast<std::size_t>(i)] << ','
                    << r.tickers[static_cast<std::size_t>(j)] << ',' << full(b.m(i, j)) << '\n';
            }
        }
    }
    return out.str();
}

namespace {

nlohmann::ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows) {
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    if (n == 0) throw DataError("report json: empty matrix");
    const Eigen::Index m = static_cast<Eigen::Index>(rows[0].size());
    Eigen::MatrixXd out(n, m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            out(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                            .get<double>();
    return out;
}

}  // namespace

std::string report_to_json(const ConnectednessReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = "spillnet.report.v1";
    j["label"] = r.label;
    if (r.date) j["date"] = r.date->iso();
    j["tickers"] = r.tickers;
    j["shares"] = matrix_to_json(r.shares);
    j["tci"] = r.tci;
    return j.dump(2) + "\n";
}

ConnectednessReport report_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.value("schema", "") != "spillnet.report.v1") {
        throw DataError("report json: unknown schema");
    }
    const auto tickers = j.at("tickers").get<std::vector<std::string>>();
    const Eigen::MatrixXd shares = matrix_from_json(j.at("shares"));
    auto report = from_shares(shares, tickers, j.value("label", ""));
    if (j.contains("date")) report.date = parse_date(j["date"].get<std::string>());
    return report;
}

}  // namespace spillnet

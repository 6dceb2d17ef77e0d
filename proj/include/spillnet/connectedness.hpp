#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "spillnet/dates.hpp"
#include "spillnet/fevd.hpp"
#include "spillnet/tvp.hpp"

namespace spillnet {

/// Full connectedness index family for one decomposition. All directional
/// quantities are percentages of forecast-error variance.
struct ConnectednessReport {
    std::vector<std::string> tickers;
    Eigen::MatrixXd shares;      // row-normalized FEVD (fractions)
    Eigen::VectorXd receiver;    // FROM_i = 100 sum_{j!=i} l_ij
    Eigen::VectorXd giver;       // TO_i   = 100 sum_{j!=i} l_ji
    Eigen::VectorXd inc_own;     // TO_i + 100 l_ii
    Eigen::VectorXd net;         // TO_i - FROM_i
    Eigen::VectorXi npt;         // #{j : npdc(i,j) > 0}
    double tci = 0.0;            // mean FROM
    Eigen::MatrixXd npdc;        // 100 (l_ji - l_ij): net transmission i -> j
    Eigen::MatrixXd pci;         // (l_ij + l_ji) / (l_ii + l_jj + l_ij + l_ji)
    Eigen::MatrixXd pii;         // (l_ij - l_ji) / (l_ij + l_ji), 0/0 -> 0
    std::string label;
    std::optional<Date> date;

    Eigen::Index n_vars() const { return shares.rows(); }
};

/// Computes every index of the family from a normalized FEVD.
ConnectednessReport indices(const FevdTable& fevd, const std::vector<std::string>& tickers,
                            const std::string& label = "");

/// Per-date reports along a TVP path, plus a time-averaged report whose
/// indices are recomputed from the date-averaged shares.
struct DynamicConnectedness {
    std::vector<ConnectednessReport> per_date;
    ConnectednessReport average;
    std::size_t failed_dates = 0;
    std::vector<std::string> failures;  // "date: reason"
};

/// snapshot -> gfevd -> indices per date. Per-date failures are recorded and
/// skipped; more than 1% failing aborts with NumericError.
DynamicConnectedness dynamic_indices(const TvpPath& path, int horizon);

/// Averaged report over an explicit subset of per-date reports.
ConnectednessReport average_reports(const std::vector<const ConnectednessReport*>& reports,
                                    const std::string& label);

/// Table rendering: N x N block of 100 l_ij, Receiver column, then Giver /
/// Inc.Own / NET / NPT rows with the TCI in the corner. Text at two
/// decimals, CSV at full precision.
std::string render_report_text(const ConnectednessReport& report);
std::string render_report_csv(const ConnectednessReport& report);

/// Pairwise matrices (NPDC, PCI, PII) as one CSV with a matrix column.
std::string render_pairwise_csv(const ConnectednessReport& report);

/// Lossless JSON round-trip used by the `network` verb.
std::string report_to_json(const ConnectednessReport& report);
ConnectednessReport report_from_json(const std::string& text);

}  // namespace spillnet

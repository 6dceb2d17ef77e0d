#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "spillnet/csv.hpp"
#include "spillnet/dates.hpp"

namespace spillnet {

enum class Transform { log_diff, plain_diff };

std::string to_string(Transform t);
Transform transform_from_string(const std::string& s);

/// Aligned price levels on the common calendar of all input series.
struct AlignedPrices {
    std::vector<std::string> tickers;
    std::vector<Date> dates;
    Eigen::MatrixXd prices;  // dates.size() x tickers.size()
};

/// Date-aligned matrix of stationary (first-differenced) series. Column
/// order is fixed at construction and inherited by every downstream matrix.
struct ReturnPanel {
    std::vector<std::string> tickers;
    std::vector<Date> dates;            // one per return row
    Eigen::MatrixXd values;             // T x N
    std::vector<Transform> transforms;  // per column

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
};

struct SampleSplit {
    std::vector<Date> break_dates;
    std::vector<std::string> labels;  // one per segment; optional (auto-named)
};

/// Inner join on dates present in every series; columns keep input order.
/// Throws DataError if fewer than two series are given, any is empty, or the
/// date intersection is empty.
AlignedPrices align(const std::vector<RawSeries>& series);

/// Single-series panel builder used by the diagnostics-only path.
AlignedPrices from_single(const RawSeries& series);

/// Row t holds ln(p_t) - ln(p_{t-1}) (log_diff) or p_t - p_{t-1}
/// (plain_diff), per column. T shrinks by one.
ReturnPanel to_returns(const AlignedPrices& prices, const std::vector<Transform>& modes);
ReturnPanel to_returns(const AlignedPrices& prices, Transform mode);

/// Splits into contiguous segments; a boundary row joins the later segment.
/// Throws DataError for a break date outside (first, last] or one that would
/// create an empty segment.
std::vector<ReturnPanel> split_panel(const ReturnPanel& panel, const SampleSplit& split);

/// CSV export: `date` first, then one column per ticker, 12 significant digits.
void write_panel_csv(const ReturnPanel& panel, const std::string& path);

}  // namespace spillnet

#include "spillnet/panel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <unordered_map>

#include "spillnet/errors.hpp"

namespace spillnet {

std::string to_string(Transform t) {
    return t == Transform::log_diff ? "log_diff" : "plain_diff";
}

Transform transform_from_string(const std::string& s) {
    if (s == "log_diff") return Transform::log_diff;
    if (s == "plain_diff") return Transform::plain_diff;
    throw ConfigError("unknown transform '" + s + "'");
}

AlignedPrices align(const std::vector<RawSeries>& series) {
    if (series.size() < 2) throw DataError("align requires at least two series");
    for (const auto& s : series) {
        if (s.size() == 0) throw DataError("series '" + s.ticker + "' is empty");
    }

    // Count how many series contain each date; keep those present in all.
    std::unordered_map<std::int32_t, std::size_t> counts;
    for (const auto& s : series) {
        for (const auto& d : s.dates) ++counts[d.serial];
    }
    std::vector<Date> common;
    for (const auto& d : series.front().dates) {
        if (counts[d.serial] == series.size()) common.push_back(d);
    }
    if (common.empty()) throw DataError("empty intersection of calendars");

    AlignedPrices out;
    out.dates = common;
    out.prices.resize(static_cast<Eigen::Index>(common.size()),
                      static_cast<Eigen::Index>(series.size()));
    for (std::size_t j = 0; j < series.size(); ++j) {
        out.tickers.push_back(series[j].ticker);
        std::unordered_map<std::int32_t, double> lookup;
        lookup.reserve(series[j].size());
        for (std::size_t i = 0; i < series[j].size(); ++i) {
            lookup[series[j].dates[i].serial] = series[j].prices[i];
        }
        for (std::size_t i = 0; i < common.size(); ++i) {
            out.prices(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                lookup.at(common[i].serial);
        }
    }
    return out;
}

AlignedPrices from_single(const RawSeries& series) {
    if (series.size() == 0) throw DataError("series '" + series.ticker + "' is empty");
    AlignedPrices out;
    out.tickers = {series.ticker};
    out.dates = series.dates;
    out.prices.resize(static_cast<Eigen::Index>(series.size()), 1);
    for (std::size_t i = 0; i < series.size(); ++i) {
        out.prices(static_cast<Eigen::Index>(i), 0) = series.prices[i];
    }
    return out;
}

ReturnPanel to_returns(const AlignedPrices& prices, const std::vector<Transform>& modes) {
    const Eigen::Index t = prices.prices.rows();
    const Eigen::Index n = prices.prices.cols();
    if (t < 2) throw DataError("need at least two aligned rows to difference");
    if (modes.size() != static_cast<std::size_t>(n)) {
        throw ConfigError("transform list length does not match column count");
    }
    ReturnPanel panel;
    panel.tickers = prices.tickers;
    panel.transforms = modes;
    panel.dates.assign(prices.dates.begin() + 1, prices.dates.end());
    panel.values.resize(t - 1, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const bool log_mode = modes[static_cast<std::size_t>(j)] == Transform::log_diff;
        for (Eigen::Index i = 1; i < t; ++i) {
            const double cur = prices.prices(i, j);
            const double prev = prices.prices(i - 1, j);
            if (log_mode) {
                if (!(cur > 0.0) || !(prev > 0.0)) {
                    throw DataError("non-positive price under log_diff in column '" +
                                    prices.tickers[static_cast<std::size_t>(j)] + "'");
                }
                panel.values(i - 1, j) = std::log(cur) - std::log(prev);
            } else {
                panel.values(i - 1, j) = cur - prev;
            }
        }
    }
    return panel;
}

ReturnPanel to_returns(const AlignedPrices& prices, Transform mode) {
    return to_returns(prices,
                      std::vector<Transform>(static_cast<std::size_t>(prices.prices.cols()), mode));
}

std::vector<ReturnPanel> split_panel(const ReturnPanel& panel, const SampleSplit& split) {
    if (panel.rows() == 0) throw DataError("cannot split an empty panel");

    std::vector<Date> breaks = split.break_dates;
    std::sort(breaks.begin(), breaks.end());
    for (const auto& b : breaks) {
        if (b <= panel.dates.front() || b > panel.dates.back()) {
            throw DataError("break date " + b.iso() + " outside panel range");
        }
    }

    std::vector<std::size_t> starts{0};
    for (const auto& b : breaks) {
        const auto it = std::lower_bound(panel.dates.begin(), panel.dates.end(), b);
        starts.push_back(static_cast<std::size_t>(it - panel.dates.begin()));
    }
    starts.push_back(static_cast<std::size_t>(panel.rows()));
    for (std::size_t s = 0; s + 1 < starts.size(); ++s) {
        if (starts[s] >= starts[s + 1]) {
            throw DataError("split produces an empty segment");
        }
    }

    std::vector<ReturnPanel> out;
    for (std::size_t s = 0; s + 1 < starts.size(); ++s) {
        ReturnPanel seg;
        seg.tickers = panel.tickers;
        seg.transforms = panel.transforms;
        seg.dates.assign(panel.dates.begin() + static_cast<std::ptrdiff_t>(starts[s]),
                         panel.dates.begin() + static_cast<std::ptrdiff_t>(starts[s + 1]));
        seg.values = panel.values.middleRows(static_cast<Eigen::Index>(starts[s]),
                                             static_cast<Eigen::Index>(starts[s + 1] - starts[s]));
        out.push_back(std::move(seg));
    }
    return out;
}

void write_panel_csv(const ReturnPanel& panel, const std::string& path) {
    std::ofstream f(path);
    if (!f.is_open()) throw DataError("cannot write '" + path + "'");
    f << "date";
    for (const auto& t : panel.tickers) f << ',' << t;
    f << '\n';
    char buf[40];
    for (Eigen::Index i = 0; i < panel.rows(); ++i) {
        f << panel.dates[static_cast<std::size_t>(i)].iso();
        for (Eigen::Index j = 0; j < panel.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.12g", panel.values(i, j));
            f << ',' << buf;
        }
        f << '\n';
    }
}

}  // namespace spillnet

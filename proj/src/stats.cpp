#include "spillnet/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <vector>

#include "spillnet/errors.hpp"

namespace spillnet {

double chi_squared_pvalue(double stat, double dof) {
    if (!(stat >= 0.0)) throw NumericError("chi-squared statistic must be non-negative");
    const boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

double f_pvalue(double stat, double df_num, double df_den) {
    if (!(stat >= 0.0)) throw NumericError("F statistic must be non-negative");
    const boost::math::fisher_f dist(df_num, df_den);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

double standard_normal_cdf(double x) {
    static const boost::math::normal dist(0.0, 1.0);
    return boost::math::cdf(dist, x);
}

std::string significance_stars(double pvalue) {
    if (pvalue <= 0.005) return "***";
    if (pvalue <= 0.01) return "**";
    if (pvalue <= 0.05) return "*";
    if (pvalue <= 0.1) return ".";
    return "";
}

LjungBoxResult ljung_box(const Eigen::VectorXd& series, int lags, bool on_squares) {
    const Eigen::Index t = series.size();
    if (lags < 1) throw ConfigError("ljung_box: lags must be positive");
    if (t <= lags + 1) throw DataError("ljung_box: series too short for requested lags");

    Eigen::VectorXd x;
    if (on_squares) {
        const Eigen::VectorXd u = series.array() - series.mean();
        x = u.array().square();
    } else {
        x = series;
    }
    const Eigen::VectorXd centered = x.array() - x.mean();
    const double denom = centered.squaredNorm();
    if (denom <= 0.0) throw NumericError("ljung_box: constant series");

    LjungBoxResult out;
    const double n = static_cast<double>(t);
    double q = 0.0;
    for (int k = 1; k <= lags; ++k) {
        double acov = 0.0;
        for (Eigen::Index i = k; i < t; ++i) acov += centered[i] * centered[i - k];
        const double rho = acov / denom;
        q += rho * rho / (n - static_cast<double>(k));
    }
    out.stat = n * (n + 2.0) * q;
    out.pvalue = chi_squared_pvalue(out.stat, static_cast<double>(lags));
    return out;
}

DescriptiveStats describe(const Eigen::VectorXd& series, int q2_lags) {
    const Eigen::Index t = series.size();
    if (t < 8) throw DataError("describe: need at least 8 observations");

    DescriptiveStats s;
    // Q^2 lags capped so short-but-valid series still get a statistic.
    s.q2_lags = std::min<int>(q2_lags, static_cast<int>(t) - 2);
    s.mean = series.mean();

    std::vector<double> sorted(series.data(), series.data() + t);
    std::sort(sorted.begin(), sorted.end());
    s.median = (t % 2 == 1)
                   ? sorted[static_cast<std::size_t>(t / 2)]
                   : 0.5 * (sorted[static_cast<std::size_t>(t / 2 - 1)] +
                            sorted[static_cast<std::size_t>(t / 2)]);

    const Eigen::ArrayXd dev = series.array() - s.mean;
    const double n = static_cast<double>(t);
    const double m2 = dev.square().sum() / n;
    if (m2 <= 0.0) throw NumericError("describe: constant series (sd = 0)");
    const double m3 = dev.cube().sum() / n;
    const double m4 = dev.square().square().sum() / n;

    s.sd = std::sqrt(dev.square().sum() / (n - 1.0));
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    s.jb_stat = n / 6.0 * (s.skewness * s.skewness +
                           0.25 * s.excess_kurtosis * s.excess_kurtosis);
    s.jb_pvalue = chi_squared_pvalue(s.jb_stat, 2.0);

    // Constant squared series (e.g. a +/-1 pattern) has no dispersion to
    // test; report no ARCH evidence instead of failing.
    const Eigen::ArrayXd sq = dev.square();
    if ((sq - sq.mean()).abs().maxCoeff() < 1e-14 * std::max(1.0, sq.mean())) {
        s.q2_stat = 0.0;
        s.q2_pvalue = 1.0;
    } else {
        const auto q2 = ljung_box(series, s.q2_lags, /*on_squares=*/true);
        s.q2_stat = q2.stat;
        s.q2_pvalue = q2.pvalue;
    }
    return s;
}

}  // namespace spillnet

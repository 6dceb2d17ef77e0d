#include "spillnet/adf.hpp"

#include <cmath>
#include <limits>

#include "spillnet/errors.hpp"
#include "spillnet/ols.hpp"
#include "spillnet/stats.hpp"

namespace spillnet {

namespace {

// MacKinnon (1994) single-series response-surface constants, as tabulated
// in the standard econometric references. p = Phi(polynomial(tau)) between
// the clamping bounds; the cubic set applies above tau_star, the quadratic
// set below.
struct Surface {
    double tau_min, tau_max, tau_star;
    double small[3];  // quadratic in tau for tau <= tau_star
    double large[4];  // cubic in tau otherwise
};

const Surface& surface_for(DeterministicSpec spec) {
    static const Surface none{-19.04, std::numeric_limits<double>::infinity(), -1.04,
                              {0.6344, 1.2378, 0.032496},
                              {0.4797, 0.93557, -0.06999, 0.033066}};
    static const Surface constant{-18.83, 2.74, -1.61,
                                  {2.1659, 1.4412, 0.038269},
                                  {1.7339, 0.93202, -0.12745, -0.010368}};
    static const Surface trend{-16.18, 0.70, -2.89,
                               {3.2512, 1.6047, 0.049588},
                               {2.5261, 0.61654, -0.37956, -0.060285}};
    switch (spec) {
        case DeterministicSpec::none: return none;
        case DeterministicSpec::constant: return constant;
        case DeterministicSpec::constant_trend: return trend;
    }
    throw ConfigError("unknown deterministic spec");
}

int deterministic_terms(DeterministicSpec spec) {
    switch (spec) {
        case DeterministicSpec::none: return 0;
        case DeterministicSpec::constant: return 1;
        case DeterministicSpec::constant_trend: return 2;
    }
    return 1;
}

// Builds the ADF regression for lag k over observations starting at
// `first_obs` (index into the differenced series). Column layout:
// [deterministic terms..., y_{t-1}, dy_{t-1}..dy_{t-k}].
struct AdfDesign {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    Eigen::Index level_col;
};

AdfDesign build_design(const Eigen::VectorXd& series, int k, Eigen::Index first_obs,
                       DeterministicSpec spec) {
    const Eigen::Index t = series.size();
    const Eigen::Index diff_len = t - 1;  // dy_t defined for t = 1..T-1
    const Eigen::Index n = diff_len - first_obs;
    const int det = deterministic_terms(spec);
    const Eigen::Index cols = det + 1 + k;

    AdfDesign d;
    d.y.resize(n);
    d.x.resize(n, cols);
    d.level_col = det;
    for (Eigen::Index r = 0; r < n; ++r) {
        const Eigen::Index ti = first_obs + r;  // dy index; level index ti+1
        d.y[r] = series[ti + 1] - series[ti];
        Eigen::Index c = 0;
        if (det >= 1) d.x(r, c++) = 1.0;
        if (det >= 2) d.x(r, c++) = static_cast<double>(r + 1);
        d.x(r, c++) = series[ti];  // y_{t-1}
        for (int j = 1; j <= k; ++j) {
            d.x(r, c++) = series[ti - j + 1] - series[ti - j];  // dy_{t-j}
        }
    }
    return d;
}

double aic_gaussian(double ssr, Eigen::Index n, Eigen::Index k) {
    const double sigma2 = ssr / static_cast<double>(n);
    const double loglik = -0.5 * static_cast<double>(n) *
                          (std::log(2.0 * M_PI) + std::log(sigma2) + 1.0);
    return 2.0 * static_cast<double>(k) - 2.0 * loglik;
}

}  // namespace

double mackinnon_pvalue(double stat, DeterministicSpec spec) {
    const Surface& s = surface_for(spec);
    if (stat > s.tau_max) return 1.0;
    if (stat < s.tau_min) return 0.0;
    double z;
    if (stat <= s.tau_star) {
        z = s.small[0] + stat * (s.small[1] + stat * s.small[2]);
    } else {
        z = s.large[0] + stat * (s.large[1] + stat * (s.large[2] + stat * s.large[3]));
    }
    return standard_normal_cdf(z);
}

AdfResult adf_test(const Eigen::VectorXd& series, int max_lag, DeterministicSpec spec) {
    const Eigen::Index t = series.size();
    if (max_lag < 0) {
        max_lag = static_cast<int>(
            std::floor(12.0 * std::pow(static_cast<double>(t) / 100.0, 0.25)));
    }
    if (t <= max_lag + 2) throw DataError("adf_test: series too short for max_lag");

    // Lag selection on the common sample (all candidates drop max_lag
    // leading differences), then a refit at the chosen lag on its own
    // longest sample.
    int best_lag = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= max_lag; ++k) {
        const auto d = build_design(series, k, max_lag, spec);
        if (d.x.rows() <= d.x.cols()) break;
        const auto fit = ols(d.x, d.y);
        const double aic = aic_gaussian(fit.ssr, d.x.rows(), d.x.cols());
        if (aic < best_aic) {
            best_aic = aic;
            best_lag = k;
        }
    }

    const auto d = build_design(series, best_lag, best_lag, spec);
    const auto fit = ols(d.x, d.y);
    const double sigma2 = fit.sigma2(d.x.rows(), d.x.cols());
    const double se = std::sqrt(sigma2 * fit.xtx_inv(d.level_col, d.level_col));
    if (!(se > 0.0)) throw NumericError("adf_test: degenerate regression");

    AdfResult out;
    out.spec = spec;
    out.chosen_lag = best_lag;
    out.statistic = fit.coef[d.level_col] / se;
    out.pvalue = mackinnon_pvalue(out.statistic, spec);
    return out;
}

}  // namespace spillnet

#pragma once

#include <Eigen/Dense>

namespace spillnet {

/// Descriptive battery for one return series: moments, Jarque-Bera
/// normality, and Ljung-Box on the squared demeaned series.
struct DescriptiveStats {
    double mean = 0.0;
    double median = 0.0;
    double sd = 0.0;  // sample standard deviation (n-1)
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double jb_stat = 0.0;
    double jb_pvalue = 1.0;
    double q2_stat = 0.0;
    int q2_lags = 20;
    double q2_pvalue = 1.0;
};

struct LjungBoxResult {
    double stat = 0.0;
    double pvalue = 1.0;
};

/// Moment-based skewness and excess kurtosis; JB = T/6 (S^2 + K^2/4) with
/// an asymptotic chi-square(2) p-value. Requires length >= 8 and sd > 0.
DescriptiveStats describe(const Eigen::VectorXd& series, int q2_lags = 20);

/// Q = T (T+2) sum_{k=1..L} rho_k^2 / (T-k), chi-square(L) p-value.
/// With on_squares the statistic is computed on the squared demeaned series
/// (the Q^2 convention). Requires length > lags + 1.
LjungBoxResult ljung_box(const Eigen::VectorXd& series, int lags, bool on_squares);

/// Upper-tail p-values used across the diagnostics battery.
double chi_squared_pvalue(double stat, double dof);
double f_pvalue(double stat, double df_num, double df_den);
double standard_normal_cdf(double x);

/// Significance stars: "."<=0.1, "*"<=0.05, "**"<=0.01, "***"<=0.005.
std::string significance_stars(double pvalue);

}  // namespace spillnet

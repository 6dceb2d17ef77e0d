#pragma once

#include <Eigen/Dense>

namespace spillnet {

enum class DeterministicSpec { constant, constant_trend, none };

struct AdfResult {
    double statistic = 0.0;
    int chosen_lag = 0;
    double pvalue = 1.0;
    DeterministicSpec spec = DeterministicSpec::constant;
};

/// Augmented Dickey-Fuller regression with AIC lag selection over
/// 0..max_lag on a common sample, then a refit at the chosen lag.
/// max_lag < 0 selects the Schwert rule floor(12 (T/100)^0.25).
/// The p-value comes from the MacKinnon (1994) response surface.
AdfResult adf_test(const Eigen::VectorXd& series, int max_lag = -1,
                   DeterministicSpec spec = DeterministicSpec::constant);

/// MacKinnon response-surface p-value for a Dickey-Fuller t-statistic.
double mackinnon_pvalue(double stat, DeterministicSpec spec);

}  // namespace spillnet

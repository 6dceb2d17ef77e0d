#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "spillnet/panel.hpp"
#include "spillnet/var.hpp"

namespace spillnet {

/// Forgetting-factor Kalman filter configuration. kappa1 decays the state
/// covariance (random-walk coefficients), kappa2 drives the residual
/// covariance EWMA. prior_window counts regression observations; the prior
/// consumes the first lag + prior_window panel rows.
struct TvpConfig {
    double kappa1 = 0.99;
    double kappa2 = 0.96;
    int prior_window = 200;
    int lag = 1;
    /// Prior state covariance = inflation x OLS coefficient covariance;
    /// 0 disables inflation (prior covariance is the OLS covariance exactly).
    double inflation = 4.0;
    /// When true the filter also runs over the prior window, so the path
    /// covers every observation (length T - lag).
    bool include_prior_window = false;

    void validate(Eigen::Index n_vars) const;
};

/// Prior state for the filter, estimated by OLS on the initial window.
/// state_cov is the k x k regressor-space factor; the full coefficient
/// covariance is resid_cov (x) state_cov (Kronecker), whose per-equation
/// blocks are the usual sigma_ii (Z'Z)^-1.
struct TvpPrior {
    Eigen::MatrixXd mean;       // k x N, column per equation
    Eigen::MatrixXd state_cov;  // k x k
    Eigen::MatrixXd resid_cov;  // N x N
};

/// Filtered coefficient and covariance paths.
struct TvpPath {
    std::vector<std::string> tickers;
    int lag = 1;
    TvpConfig config;
    std::vector<Date> dates;
    std::vector<Eigen::MatrixXd> coeffs;     // k x N stacked state per date
    std::vector<Eigen::MatrixXd> resid_cov;  // N x N S_t per date
    std::vector<Eigen::MatrixXd> state_cov;  // k x k factor per date

    std::size_t size() const { return dates.size(); }
};

TvpPrior init_prior(const ReturnPanel& panel, const TvpConfig& cfg);

/// Runs the forgetting-factor filter. Per step: predict leaves the mean
/// unchanged and divides the state covariance by kappa1; the update uses the
/// standard gain against the regressor row with a Joseph-form covariance
/// update; S_t = kappa2 S_{t-1} + (1-kappa2) e e' from the one-step
/// prediction error, then symmetrized.
TvpPath filter(const ReturnPanel& panel, const TvpConfig& cfg);

/// Reshapes the stacked state at index t into a VarEstimate-shaped view with
/// sigma = S_t and the snapshot date attached.
VarEstimate snapshot(const TvpPath& path, std::size_t t);

/// One CSV row per date: flattened state (equation-major), then the lower
/// triangle of S_t; 12 significant digits; config echoed as '#' comments.
void write_path_csv(const TvpPath& path, const std::string& out_path);

}  // namespace spillnet

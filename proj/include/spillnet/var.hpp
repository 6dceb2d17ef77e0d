#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "spillnet/dates.hpp"
#include "spillnet/panel.hpp"

namespace spillnet {

/// Static VAR(p) by equation-wise least squares.
struct VarEstimate {
    int lag_order = 1;
    bool has_intercept = true;
    std::vector<std::string> tickers;
    std::vector<Eigen::MatrixXd> phi;  // phi[j](i,m): loading of x_{m,t-1-j} in equation i
    Eigen::VectorXd intercept;
    Eigen::MatrixXd sigma;      // residual covariance, dof-corrected
    Eigen::MatrixXd residuals;  // (T-p) x N; empty for TVP snapshots
    double bic = 0.0;
    double companion_radius = 0.0;
    bool stable = false;
    std::optional<Date> as_of;  // set for TVP snapshots

    Eigen::Index n_vars() const { return sigma.rows(); }
};

struct MaCoefficients {
    int horizons = 0;
    std::vector<Eigen::MatrixXd> psi;  // psi[0] = I
};

/// Equation-wise OLS with shared regressors [1?, x_{t-1}, .., x_{t-p}].
/// Residual covariance divides by T - p - N p - intercept; BIC comes from
/// the Gaussian log-likelihood. Requires T - p > N p + 1.
VarEstimate fit_var(const ReturnPanel& panel, int p, bool intercept = true);

/// argmin BIC over p = 1..p_max, all candidates fitted on the common sample
/// obtained by dropping the first p_max rows.
int select_lag(const ReturnPanel& panel, int p_max, bool intercept = true);

/// Wold recursion: psi_0 = I, psi_h = sum_{j=1..min(h,p)} phi_j psi_{h-j}.
MaCoefficients ma_coefficients(const VarEstimate& est, int horizons);

/// Spectral radius of the companion matrix.
double companion_spectral_radius(const std::vector<Eigen::MatrixXd>& phi);

/// Self-describing text snapshot (ticker order, p, matrices row-major,
/// 17 significant digits).
std::string to_snapshot_text(const VarEstimate& est);
VarEstimate from_snapshot_text(const std::string& text);

}  // namespace spillnet

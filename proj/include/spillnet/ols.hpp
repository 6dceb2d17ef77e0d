#pragma once

#include <Eigen/Dense>

namespace spillnet {

/// Least-squares fit of y on X with rank checking.
struct OlsFit {
    Eigen::VectorXd coef;
    Eigen::VectorXd residuals;
    double ssr = 0.0;
    Eigen::MatrixXd xtx_inv;  // (X'X)^-1

    /// Unbiased residual variance, SSR / (n - k).
    double sigma2(Eigen::Index n, Eigen::Index k) const {
        return ssr / static_cast<double>(n - k);
    }
};

/// Solves min ||y - X b||^2 via column-pivoted QR. Throws NumericError when
/// X is rank deficient.
OlsFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

/// Multi-response variant: one solve for Y with several columns.
/// Returns the k x m coefficient matrix. Throws NumericError when X is rank
/// deficient.
Eigen::MatrixXd ols_multi(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y);

}  // namespace spillnet

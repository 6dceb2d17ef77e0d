#pragma once

#include <Eigen/Dense>

#include "spillnet/var.hpp"

namespace spillnet {

/// H-step generalized forecast-error variance decomposition.
/// raw(i,j) = share of i's forecast-error variance attributed to shocks in
/// j before normalization; normalized rows sum to one.
struct FevdTable {
    int horizon = 0;
    Eigen::MatrixXd raw;
    Eigen::MatrixXd normalized;
};

/// d_ij = sigma_jj^-1 sum_h (e_i' Psi_h Sigma e_j)^2 /
///        sum_h (e_i' Psi_h Sigma Psi_h' e_i), order-free in the variables.
/// Throws NumericError on a non-positive Sigma diagonal or a degenerate
/// forecast variance.
FevdTable gfevd(const VarEstimate& est, int horizon);

}  // namespace spillnet

#include "spillnet/fevd.hpp"

#include "spillnet/errors.hpp"

namespace spillnet {

FevdTable gfevd(const VarEstimate& est, int horizon) {
    if (horizon < 1) throw ConfigError("gfevd: horizon must be positive");
    const Eigen::Index n = est.n_vars();
    const Eigen::MatrixXd& sigma = est.sigma;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (!(sigma(j, j) > 0.0)) {
            throw NumericError("gfevd: non-positive diagonal in residual covariance");
        }
    }

    const auto ma = ma_coefficients(est, horizon);
    Eigen::MatrixXd numer = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd denom = Eigen::VectorXd::Zero(n);
    for (int h = 0; h < horizon; ++h) {
        const Eigen::MatrixXd& psi = ma.psi[static_cast<std::size_t>(h)];
        const Eigen::MatrixXd ps = psi * sigma;             // (Psi_h Sigma)
        numer += ps.array().square().matrix();              // (e_i' Psi_h Sigma e_j)^2
        denom += (ps * psi.transpose()).diagonal();         // e_i' Psi_h Sigma Psi_h' e_i
    }

    FevdTable out;
    out.horizon = horizon;
    out.raw.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(denom[i] > 0.0)) throw NumericError("gfevd: degenerate forecast variance");
        for (Eigen::Index j = 0; j < n; ++j) {
            out.raw(i, j) = numer(i, j) / (sigma(j, j) * denom[i]);
        }
    }
    out.normalized = out.raw.array().colwise() / out.raw.rowwise().sum().array();
    return out;
}

}  // namespace spillnet

#include "spillnet/tvp.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "spillnet/errors.hpp"
#include "spillnet/ols.hpp"

namespace spillnet {

namespace {

// Regressor row for observation at panel row ti: [1, x_{t-1}, .., x_{t-p}].
Eigen::VectorXd regressor_row(const Eigen::MatrixXd& values, int p, Eigen::Index ti) {
    const Eigen::Index n = values.cols();
    Eigen::VectorXd z(1 + n * p);
    z[0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        z.segment(1 + (j - 1) * n, n) = values.row(ti - j).transpose();
    }
    return z;
}

void symmetrize(Eigen::MatrixXd& m) { m = 0.5 * (m + m.transpose()).eval(); }

}  // namespace

void TvpConfig::validate(Eigen::Index n_vars) const {
    if (!(kappa1 > 0.0 && kappa1 <= 1.0)) throw ConfigError("kappa1 must be in (0, 1]");
    if (!(kappa2 > 0.0 && kappa2 <= 1.0)) throw ConfigError("kappa2 must be in (0, 1]");
    if (lag < 1) throw ConfigError("tvp lag order must be positive");
    if (inflation < 0.0) throw ConfigError("prior inflation must be non-negative");
    if (prior_window <= static_cast<int>(n_vars) * lag + 1) {
        throw ConfigError("prior_window must exceed N*p + 1");
    }
}

TvpPrior init_prior(const ReturnPanel& panel, const TvpConfig& cfg) {
    cfg.validate(panel.cols());
    const Eigen::Index n = panel.cols();
    const int p = cfg.lag;
    const Eigen::Index k = 1 + n * p;
    if (panel.rows() < p + cfg.prior_window) {
        throw DataError("init_prior: panel shorter than lag + prior_window");
    }

    Eigen::MatrixXd Z(cfg.prior_window, k), Y(cfg.prior_window, n);
    for (int r = 0; r < cfg.prior_window; ++r) {
        const Eigen::Index ti = p + r;
        Z.row(r) = regressor_row(panel.values, p, ti).transpose();
        Y.row(r) = panel.values.row(ti);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Z);
    if (qr.rank() < k) throw NumericError("init_prior: singular prior regression");

    TvpPrior prior;
    prior.mean = qr.solve(Y);
    const Eigen::MatrixXd E = Y - Z * prior.mean;
    const double dof = static_cast<double>(cfg.prior_window) - static_cast<double>(k);
    prior.resid_cov = (E.transpose() * E) / dof;
    symmetrize(prior.resid_cov);

    const Eigen::MatrixXd ztz = Z.transpose() * Z;
    Eigen::MatrixXd ztz_inv = ztz.ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    const double scale = cfg.inflation > 0.0 ? cfg.inflation : 1.0;
    prior.state_cov = scale * ztz_inv;
    symmetrize(prior.state_cov);
    return prior;
}

TvpPath filter(const ReturnPanel& panel, const TvpConfig& cfg) {
    const TvpPrior prior = init_prior(panel, cfg);
    const int p = cfg.lag;
    const Eigen::Index t = panel.rows();

    TvpPath path;
    path.tickers = panel.tickers;
    path.lag = p;
    path.config = cfg;

    Eigen::MatrixXd B = prior.mean;       // k x N
    Eigen::MatrixXd P = prior.state_cov;  // k x k
    Eigen::MatrixXd S = prior.resid_cov;  // N x N
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(P.rows(), P.cols());

    Eigen::Index first;
    if (cfg.include_prior_window) {
        first = p;
    } else {
        // The path opens at the prior's as-of date (last row of the window).
        first = p + cfg.prior_window - 1;
        path.dates.push_back(panel.dates[static_cast<std::size_t>(first)]);
        path.coeffs.push_back(B);
        path.resid_cov.push_back(S);
        path.state_cov.push_back(P);
        ++first;
    }

    for (Eigen::Index ti = first; ti < t; ++ti) {
        const Eigen::VectorXd z = regressor_row(panel.values, p, ti);
        const Eigen::VectorXd y = panel.values.row(ti).transpose();
        if (!y.allFinite() || !z.allFinite()) {
            throw DataError("filter: non-finite observation at " +
                            panel.dates[static_cast<std::size_t>(ti)].iso());
        }

        // Predict: random-walk mean, covariance inflated by 1/kappa1
        // (R_t = (1/kappa1 - 1) P_{t-1|t-1}).
        Eigen::MatrixXd p_pred = P / cfg.kappa1;

        // One-step prediction error drives the covariance EWMA.
        const Eigen::VectorXd err = y - B.transpose() * z;
        S = cfg.kappa2 * S + (1.0 - cfg.kappa2) * (err * err.transpose());
        symmetrize(S);

        // Gain in the shared regressor space; the cross-equation covariance
        // S_t factors out of the Kronecker-structured state covariance.
        const double denom = z.dot(p_pred * z) + 1.0;
        if (!(denom > 0.0) || !std::isfinite(denom)) {
            throw NumericError("filter: state covariance lost positive definiteness at " +
                               panel.dates[static_cast<std::size_t>(ti)].iso());
        }
        const Eigen::VectorXd gain = (p_pred * z) / denom;

        B += gain * err.transpose();
        const Eigen::MatrixXd J = I - gain * z.transpose();
        P = J * p_pred * J.transpose() + gain * gain.transpose();
        symmetrize(P);
        if (!P.allFinite() || P.diagonal().minCoeff() < -1e-8) {
            throw NumericError("filter: state covariance lost positive definiteness at " +
                               panel.dates[static_cast<std::size_t>(ti)].iso());
        }

        path.dates.push_back(panel.dates[static_cast<std::size_t>(ti)]);
        path.coeffs.push_back(B);
        path.resid_cov.push_back(S);
        path.state_cov.push_back(P);
    }
    return path;
}

VarEstimate snapshot(const TvpPath& path, std::size_t t) {
    if (t >= path.size()) throw ConfigError("snapshot: index out of range");
    const Eigen::Index n = static_cast<Eigen::Index>(path.tickers.size());
    const int p = path.lag;
    const Eigen::MatrixXd& B = path.coeffs[t];

    VarEstimate est;
    est.lag_order = p;
    est.has_intercept = true;
    est.tickers = path.tickers;
    est.intercept = B.row(0).transpose();
    for (int j = 0; j < p; ++j) {
        est.phi.push_back(B.middleRows(1 + j * n, n).transpose());
    }
    est.sigma = path.resid_cov[t];
    est.bic = std::numeric_limits<double>::quiet_NaN();
    est.companion_radius = companion_spectral_radius(est.phi);
    est.stable = est.companion_radius < 1.0;
    est.as_of = path.dates[t];
    return est;
}

void write_path_csv(const TvpPath& path, const std::string& out_path) {
    std::ofstream f(out_path);
    if (!f.is_open()) throw DataError("cannot write '" + out_path + "'");
    char buf[40];
    f << "# spillnet tvp path v1\n";
    f << "# kappa1: " << path.config.kappa1 << '\n';
    f << "# kappa2: " << path.config.kappa2 << '\n';
    f << "# prior_window: " << path.config.prior_window << '\n';
    f << "# inflation: " << path.config.inflation << '\n';
    f << "# lag: " << path.lag << '\n';
    f << "# include_prior_window: " << (path.config.include_prior_window ? 1 : 0) << '\n';

    const Eigen::Index n = static_cast<Eigen::Index>(path.tickers.size());
    const Eigen::Index k = 1 + n * path.lag;
    f << "date";
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& eq = path.tickers[static_cast<std::size_t>(i)];
        f << ',' << eq << ".c";
        for (int j = 1; j <= path.lag; ++j) {
            for (Eigen::Index m = 0; m < n; ++m) {
                f << ',' << eq << ".phi" << j << '.' << path.tickers[static_cast<std::size_t>(m)];
            }
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            f << ",S." << path.tickers[static_cast<std::size_t>(i)] << '.'
              << path.tickers[static_cast<std::size_t>(j)];
        }
    }
    f << '\n';

    for (std::size_t r = 0; r < path.size(); ++r) {
        f << path.dates[r].iso();
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index c = 0; c < k; ++c) {
                std::snprintf(buf, sizeof(buf), "%.12g", path.coeffs[r](c, i));
                f << ',' << buf;
            }
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j <= i; ++j) {
                std::snprintf(buf, sizeof(buf), "%.12g", path.resid_cov[r](i, j));
                f << ',' << buf;
            }
        }
        f << '\n';
    }
}

}  // namespace spillnet

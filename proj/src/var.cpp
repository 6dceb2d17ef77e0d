#include "spillnet/var.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "spillnet/errors.hpp"
#include "spillnet/ols.hpp"

namespace spillnet {

namespace {

// Stacks the lagged regressor matrix for observations first_obs..T-1.
// Column layout: [1?, x_{t-1} (N cols), ..., x_{t-p} (N cols)].
void build_design(const Eigen::MatrixXd& values, int p, bool intercept,
                  Eigen::Index first_obs, Eigen::MatrixXd& Z, Eigen::MatrixXd& Y) {
    const Eigen::Index t = values.rows();
    const Eigen::Index n = values.cols();
    const Eigen::Index rows = t - first_obs;
    const Eigen::Index k = (intercept ? 1 : 0) + n * p;
    Z.resize(rows, k);
    Y = values.bottomRows(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index ti = first_obs + r;
        Eigen::Index c = 0;
        if (intercept) Z(r, c++) = 1.0;
        for (int j = 1; j <= p; ++j) {
            Z.block(r, c, 1, n) = values.row(ti - j);
            c += n;
        }
    }
}

double log_det_spd(const Eigen::MatrixXd& m) {
    const Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw NumericError("covariance matrix not positive definite");
    }
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

VarEstimate fit_on_design(const ReturnPanel& panel, int p, bool intercept,
                          Eigen::Index first_obs) {
    const Eigen::Index n = panel.cols();
    const Eigen::Index t = panel.rows();
    if (p < 1) throw ConfigError("fit_var: lag order must be positive");
    if (t - first_obs <= n * p + 1) {
        throw DataError("fit_var: sample too short for requested lag order");
    }

    Eigen::MatrixXd Z, Y;
    build_design(panel.values, p, intercept, first_obs, Z, Y);
    const Eigen::MatrixXd B = ols_multi(Z, Y);
    const Eigen::MatrixXd E = Y - Z * B;

    const Eigen::Index t_eff = Z.rows();
    const Eigen::Index k_eq = Z.cols();
    const double dof = static_cast<double>(t_eff - k_eq);
    if (dof <= 0) throw DataError("fit_var: no residual degrees of freedom");

    VarEstimate est;
    est.lag_order = p;
    est.has_intercept = intercept;
    est.tickers = panel.tickers;
    est.residuals = E;
    est.sigma = (E.transpose() * E) / dof;
    est.sigma = 0.5 * (est.sigma + est.sigma.transpose()).eval();

    const Eigen::Index off = intercept ? 1 : 0;
    est.intercept = intercept ? Eigen::VectorXd(B.row(0).transpose())
                              : Eigen::VectorXd(Eigen::VectorXd::Zero(n));
    for (int j = 0; j < p; ++j) {
        est.phi.push_back(B.middleRows(off + j * n, n).transpose());
    }

    // Gaussian log-likelihood with the ML covariance; k counts all freely
    // estimated regression coefficients.
    const Eigen::MatrixXd sigma_ml = (E.transpose() * E) / static_cast<double>(t_eff);
    const double ll = -0.5 * static_cast<double>(t_eff) *
                      (static_cast<double>(n) * std::log(2.0 * M_PI) +
                       log_det_spd(sigma_ml) + static_cast<double>(n));
    const double k_total = static_cast<double>(n * k_eq);
    est.bic = -2.0 * ll + k_total * std::log(static_cast<double>(t_eff));

    est.companion_radius = companion_spectral_radius(est.phi);
    est.stable = est.companion_radius < 1.0;
    return est;
}

}  // namespace

double companion_spectral_radius(const std::vector<Eigen::MatrixXd>& phi) {
    const int p = static_cast<int>(phi.size());
    const Eigen::Index n = phi.front().rows();
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n * p, n * p);
    for (int j = 0; j < p; ++j) companion.block(0, j * n, n, n) = phi[static_cast<std::size_t>(j)];
    if (p > 1) {
        companion.block(n, 0, n * (p - 1), n * (p - 1)) =
            Eigen::MatrixXd::Identity(n * (p - 1), n * (p - 1));
    }
    return companion.eigenvalues().cwiseAbs().maxCoeff();
}

VarEstimate fit_var(const ReturnPanel& panel, int p, bool intercept) {
    return fit_on_design(panel, p, intercept, p);
}

int select_lag(const ReturnPanel& panel, int p_max, bool intercept) {
    if (p_max < 1) throw ConfigError("select_lag: p_max must be positive");
    int best_p = 1;
    double best_bic = std::numeric_limits<double>::infinity();
    for (int p = 1; p <= p_max; ++p) {
        const auto est = fit_on_design(panel, p, intercept, p_max);
        if (est.bic < best_bic) {
            best_bic = est.bic;
            best_p = p;
        }
    }
    return best_p;
}

MaCoefficients ma_coefficients(const VarEstimate& est, int horizons) {
    if (horizons < 1) throw ConfigError("ma_coefficients: horizon must be positive");
    const Eigen::Index n = est.n_vars();
    MaCoefficients ma;
    ma.horizons = horizons;
    ma.psi.reserve(static_cast<std::size_t>(horizons));
    ma.psi.push_back(Eigen::MatrixXd::Identity(n, n));
    for (int h = 1; h < horizons; ++h) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
        const int jmax = std::min(h, est.lag_order);
        for (int j = 1; j <= jmax; ++j) {
            acc += est.phi[static_cast<std::size_t>(j - 1)] *
                   ma.psi[static_cast<std::size_t>(h - j)];
        }
        ma.psi.push_back(std::move(acc));
    }
    return ma;
}

namespace {

void write_matrix(std::ostringstream& out, const char* name, const Eigen::MatrixXd& m) {
    char buf[40];
    out << name << ':';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            out << ' ' << buf;
        }
    }
    out << '\n';
}

Eigen::MatrixXd read_matrix(std::istringstream& in, Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            if (!(in >> m(i, j))) throw DataError("snapshot: truncated matrix");
    return m;
}

std::string expect_field(std::istream& in, const std::string& key) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind(key + ":", 0) != 0) {
            throw DataError("snapshot: expected field '" + key + "'");
        }
        return line.substr(key.size() + 1);
    }
    throw DataError("snapshot: missing field '" + key + "'");
}

}  // namespace

std::string to_snapshot_text(const VarEstimate& est) {
    std::ostringstream out;
    out << "# spillnet var estimate v1\n";
    out << "tickers:";
    for (std::size_t i = 0; i < est.tickers.size(); ++i) {
        out << (i == 0 ? " " : ",") << est.tickers[i];
    }
    out << '\n';
    out << "p: " << est.lag_order << '\n';
    out << "intercept: " << (est.has_intercept ? 1 : 0) << '\n';
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", est.bic);
    out << "bic: " << buf << '\n';
    std::snprintf(buf, sizeof(buf), "%.17g", est.companion_radius);
    out << "companion_radius: " << buf << '\n';
    out << "stable: " << (est.stable ? 1 : 0) << '\n';
    write_matrix(out, "c", est.intercept);
    for (int j = 0; j < est.lag_order; ++j) {
        const std::string name = "phi" + std::to_string(j + 1);
        write_matrix(out, name.c_str(), est.phi[static_cast<std::size_t>(j)]);
    }
    write_matrix(out, "sigma", est.sigma);
    return out.str();
}

VarEstimate from_snapshot_text(const std::string& text) {
    std::istringstream in(text);
    VarEstimate est;

    std::istringstream tick(expect_field(in, "tickers"));
    std::string t;
    while (std::getline(tick, t, ',')) {
        const auto a = t.find_first_not_of(' ');
        if (a != std::string::npos) est.tickers.push_back(t.substr(a));
    }
    const Eigen::Index n = static_cast<Eigen::Index>(est.tickers.size());
    if (n == 0) throw DataError("snapshot: no tickers");

    est.lag_order = std::stoi(expect_field(in, "p"));
    est.has_intercept = std::stoi(expect_field(in, "intercept")) != 0;
    est.bic = std::stod(expect_field(in, "bic"));
    est.companion_radius = std::stod(expect_field(in, "companion_radius"));
    est.stable = std::stoi(expect_field(in, "stable")) != 0;

    std::istringstream cvals(expect_field(in, "c"));
    est.intercept = read_matrix(cvals, n, 1);
    for (int j = 0; j < est.lag_order; ++j) {
        std::istringstream pv(expect_field(in, "phi" + std::to_string(j + 1)));
        est.phi.push_back(read_matrix(pv, n, n));
    }
    std::istringstream sv(expect_field(in, "sigma"));
    est.sigma = read_matrix(sv, n, n);
    return est;
}

}  // namespace spillnet

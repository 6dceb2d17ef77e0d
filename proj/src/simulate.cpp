#include "spillnet/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "spillnet/errors.hpp"
#include "spillnet/var.hpp"

namespace spillnet {

Eigen::VectorXd normal_vector(Rng& rng, const Eigen::MatrixXd& sigma_chol) {
    Eigen::VectorXd z(sigma_chol.rows());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
    return sigma_chol * z;
}

std::vector<Eigen::MatrixXd> random_stable_var(int n, int p, double radius, Rng& rng) {
    std::vector<Eigen::MatrixXd> phi;
    const double scale0 = 0.5 / std::sqrt(static_cast<double>(n * p));
    for (int j = 0; j < p; ++j) {
        Eigen::MatrixXd m(n, n);
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b) m(a, b) = scale0 * rng.normal();
        phi.push_back(std::move(m));
    }
    const double current = companion_spectral_radius(phi);
    if (current <= 0.0) return phi;
    const double s = radius / current;
    for (int j = 0; j < p; ++j) phi[static_cast<std::size_t>(j)] *= std::pow(s, j + 1);
    return phi;
}

Eigen::MatrixXd random_covariance(int n, Rng& rng) {
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rng.normal();
    Eigen::MatrixXd sigma = a * a.transpose() / static_cast<double>(n) +
                            0.2 * Eigen::MatrixXd::Identity(n, n);
    sigma *= static_cast<double>(n) / sigma.trace();
    return sigma;
}

Eigen::MatrixXd simulate_var(const std::vector<Eigen::MatrixXd>& phi,
                             const std::vector<Eigen::MatrixXd>& phi_post,
                             Eigen::Index break_at, const Eigen::VectorXd& intercept,
                             const Eigen::MatrixXd& sigma, Eigen::Index t, Rng& rng,
                             Eigen::Index burn_in) {
    const Eigen::Index n = sigma.rows();
    const int p = static_cast<int>(phi.size());
    const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw NumericError("simulate_var: covariance not positive definite");
    }
    const Eigen::MatrixXd chol = llt.matrixL();

    Eigen::MatrixXd history = Eigen::MatrixXd::Zero(p, n);  // most recent row last
    Eigen::MatrixXd out(t, n);
    for (Eigen::Index step = -burn_in; step < t; ++step) {
        const auto& coeffs = (!phi_post.empty() && step >= break_at) ? phi_post : phi;
        Eigen::VectorXd x = intercept + normal_vector(rng, chol);
        for (int j = 1; j <= p; ++j) {
            x += coeffs[static_cast<std::size_t>(j - 1)] * history.row(p - j).transpose();
        }
        if (p > 0) {
            for (int r = 0; r + 1 < p; ++r) history.row(r) = history.row(r + 1);
            history.row(p - 1) = x.transpose();
        }
        if (step >= 0) out.row(step) = x.transpose();
    }
    return out;
}

Eigen::MatrixXd simulate_var(const std::vector<Eigen::MatrixXd>& phi,
                             const Eigen::VectorXd& intercept, const Eigen::MatrixXd& sigma,
                             Eigen::Index t, Rng& rng, Eigen::Index burn_in) {
    return simulate_var(phi, {}, 0, intercept, sigma, t, rng, burn_in);
}

namespace {

std::vector<Date> weekday_calendar(Date start, Eigen::Index count) {
    std::vector<Date> out;
    Date d = start;
    while (d.is_weekend()) d = d.next_day();
    while (static_cast<Eigen::Index>(out.size()) < count) {
        out.push_back(d);
        do {
            d = d.next_day();
        } while (d.is_weekend());
    }
    return out;
}

}  // namespace

ReturnPanel panel_from_returns(const Eigen::MatrixXd& returns,
                               const std::vector<std::string>& tickers, Date start) {
    if (static_cast<Eigen::Index>(tickers.size()) != returns.cols()) {
        throw ConfigError("panel_from_returns: ticker count mismatch");
    }
    ReturnPanel panel;
    panel.tickers = tickers;
    panel.values = returns;
    panel.dates = weekday_calendar(start, returns.rows());
    panel.transforms.assign(tickers.size(), Transform::log_diff);
    return panel;
}

namespace {

// Coupled block with moderate cross-loadings; the optional crypto column
// responds to the others, feeds back into nobody, and carries a large,
// weakly correlated innovation variance on a 7-day calendar.
void fixture_dgp(const FixtureSpec& spec, std::vector<Eigen::MatrixXd>& phi,
                 Eigen::MatrixXd& sigma) {
    const int n = static_cast<int>(spec.tickers.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Constant(n, n, 0.05);
    a.diagonal().setConstant(0.20);
    Eigen::MatrixXd s = Eigen::MatrixXd::Constant(n, n, 0.30);
    s.diagonal().setOnes();

    if (spec.crypto_column >= 0 && spec.crypto_column < n) {
        const Eigen::Index c = spec.crypto_column;
        // responds to the others, nobody responds to it
        a.row(c).setConstant(0.12);
        a.col(c).setZero();
        a(c, c) = 0.10;
        // large idiosyncratic variance, weak correlation
        for (Eigen::Index j = 0; j < n; ++j) {
            s(c, j) = s(j, c) = 0.05 * 5.0;
        }
        s(c, c) = 25.0;
    }

    phi.assign(1, a);
    const double radius = companion_spectral_radius(phi);
    phi[0] *= 0.55 / radius;
    sigma = s * 1e-4;  // daily-return scale
}

}  // namespace

std::vector<std::string> write_fixture_csvs(const FixtureSpec& spec, const std::string& dir) {
    const int n = static_cast<int>(spec.tickers.size());
    if (n < 2) throw ConfigError("fixture needs at least two tickers");
    if (spec.rows < 30) throw ConfigError("fixture needs at least 30 rows");

    std::vector<Eigen::MatrixXd> phi;
    Eigen::MatrixXd sigma;
    fixture_dgp(spec, phi, sigma);

    Rng rng(spec.seed);
    const Eigen::MatrixXd returns =
        simulate_var(phi, Eigen::VectorXd::Zero(n), sigma, spec.rows - 1, rng);
    const std::vector<Date> days = weekday_calendar(spec.start, spec.rows);

    Eigen::MatrixXd prices(spec.rows, n);
    for (int j = 0; j < n; ++j) {
        prices(0, j) = 100.0 * (1.0 + j);
        for (Eigen::Index i = 1; i < spec.rows; ++i) {
            prices(i, j) = prices(i - 1, j) * std::exp(returns(i - 1, j));
        }
    }

    std::filesystem::create_directories(dir);
    std::vector<std::string> files;
    char buf[40];
    for (int j = 0; j < n; ++j) {
        const std::string path = dir + "/" + spec.tickers[static_cast<std::size_t>(j)] + ".csv";
        std::ofstream f(path);
        if (!f.is_open()) throw DataError("cannot write '" + path + "'");
        f << "date,price\n";
        if (j == spec.crypto_column) {
            // 7-day calendar: weekend prices carry the last weekday forward.
            std::size_t next = 0;
            double last = prices(0, j);
            for (Date d = days.front(); d <= days.back(); d = d.next_day()) {
                if (next < days.size() && d == days[next]) {
                    last = prices(static_cast<Eigen::Index>(next), j);
                    ++next;
                }
                std::snprintf(buf, sizeof(buf), "%.12g", last);
                f << d.iso() << ',' << buf << '\n';
            }
        } else {
            for (Eigen::Index i = 0; i < spec.rows; ++i) {
                std::snprintf(buf, sizeof(buf), "%.12g", prices(i, j));
                f << days[static_cast<std::size_t>(i)].iso() << ',' << buf << '\n';
            }
        }
        files.push_back(path);
    }
    return files;
}

}  // namespace spillnet

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "spillnet/dates.hpp"
#include "spillnet/panel.hpp"

namespace spillnet {

/// Seeded generator with a platform-stable normal sampler (Box-Muller over
/// explicit 53-bit uniforms), so fixtures and goldens are reproducible.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    std::uint64_t raw() { return engine_(); }

   private:
    std::mt19937_64 engine_;
};

/// Draws N(0, Sigma) via the lower Cholesky factor.
Eigen::VectorXd normal_vector(Rng& rng, const Eigen::MatrixXd& sigma_chol);

/// Random VAR coefficients rescaled so the companion spectral radius equals
/// `radius` (scaling phi_j by s^j scales every companion eigenvalue by s).
std::vector<Eigen::MatrixXd> random_stable_var(int n, int p, double radius, Rng& rng);

/// Well-conditioned random covariance A A'/n + 0.2 I, rescaled to unit
/// average variance.
Eigen::MatrixXd random_covariance(int n, Rng& rng);

/// Simulates a VAR(p) with optional single coefficient break: observations
/// before `break_at` use phi, the rest use phi_post (pass an empty vector
/// for no break). Burn-in is discarded.
Eigen::MatrixXd simulate_var(const std::vector<Eigen::MatrixXd>& phi,
                             const std::vector<Eigen::MatrixXd>& phi_post,
                             Eigen::Index break_at, const Eigen::VectorXd& intercept,
                             const Eigen::MatrixXd& sigma, Eigen::Index t, Rng& rng,
                             Eigen::Index burn_in = 200);

/// Convenience wrapper without break.
Eigen::MatrixXd simulate_var(const std::vector<Eigen::MatrixXd>& phi,
                             const Eigen::VectorXd& intercept, const Eigen::MatrixXd& sigma,
                             Eigen::Index t, Rng& rng, Eigen::Index burn_in = 200);

/// Wraps a simulated return matrix as a panel on a weekday calendar.
ReturnPanel panel_from_returns(const Eigen::MatrixXd& returns,
                               const std::vector<std::string>& tickers, Date start);

struct FixtureSpec {
    std::vector<std::string> tickers;
    Eigen::Index rows = 500;   // price rows per equity series
    std::uint64_t seed = 42;
    Date start = Date::from_ymd(2015, 1, 6);
    /// Index of a high-volatility, weakly coupled column written on a 7-day
    /// calendar (weekend prices carried forward); -1 for none.
    int crypto_column = -1;
};

/// Writes one price CSV per ticker (date,price) under `dir`, generated from
/// a seeded stable VAR with a calibrated receiver column. Returns the list
/// of files written.
std::vector<std::string> write_fixture_csvs(const FixtureSpec& spec, const std::string& dir);

}  // namespace spillnet

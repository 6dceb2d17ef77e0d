#include "spillnet/ols.hpp"

#include "spillnet/errors.hpp"

namespace spillnet {

OlsFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() != y.size()) throw NumericError("ols: dimension mismatch");
    if (X.rows() <= X.cols()) throw NumericError("ols: fewer rows than columns");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < X.cols()) throw NumericError("ols: rank-deficient regressor matrix");
    OlsFit fit;
    fit.coef = qr.solve(y);
    fit.residuals = y - X * fit.coef;
    fit.ssr = fit.residuals.squaredNorm();
    const Eigen::MatrixXd xtx = X.transpose() * X;
    fit.xtx_inv = xtx.ldlt().solve(Eigen::MatrixXd::Identity(X.cols(), X.cols()));
    return fit;
}

Eigen::MatrixXd ols_multi(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
    if (X.rows() != Y.rows()) throw NumericError("ols_multi: dimension mismatch");
    if (X.rows() <= X.cols()) throw NumericError("ols_multi: fewer rows than columns");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < X.cols()) throw NumericError("ols_multi: rank-deficient regressor matrix");
    return qr.solve(Y);
}

}  // namespace spillnet

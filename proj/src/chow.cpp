#include "spillnet/chow.hpp"

#include "spillnet/errors.hpp"
#include "spillnet/ols.hpp"
#include "spillnet/stats.hpp"

namespace spillnet {

ChowResult chow_test(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                     Eigen::Index break_index) {
    const Eigen::Index t = X.rows();
    const Eigen::Index k = X.cols();
    if (y.size() != t) throw NumericError("chow_test: dimension mismatch");
    if (break_index <= k || t - break_index <= k) {
        throw DataError("chow_test: sub-sample shorter than regressor count");
    }

    const double ssr_pooled = ols(X, y).ssr;
    const double ssr_1 = ols(X.topRows(break_index), y.head(break_index)).ssr;
    const double ssr_2 = ols(X.bottomRows(t - break_index), y.tail(t - break_index)).ssr;

    ChowResult out;
    out.df_num = static_cast<int>(k);
    out.df_den = static_cast<int>(t - 2 * k);
    const double num = (ssr_pooled - ssr_1 - ssr_2) / static_cast<double>(k);
    const double den = (ssr_1 + ssr_2) / static_cast<double>(out.df_den);
    if (!(den > 0.0)) throw NumericError("chow_test: zero residual variance");
    out.f_stat = std::max(0.0, num / den);
    out.pvalue = f_pvalue(out.f_stat, static_cast<double>(out.df_num),
                          static_cast<double>(out.df_den));
    return out;
}

}  // namespace spillnet

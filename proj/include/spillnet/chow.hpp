#pragma once

#include <Eigen/Dense>
#include <optional>

#include "spillnet/dates.hpp"

namespace spillnet {

struct ChowResult {
    double f_stat = 0.0;
    int df_num = 0;
    int df_den = 0;
    double pvalue = 1.0;
    std::optional<Date> break_date;
};

/// Classic Chow break test: F = [(SSR_pooled - SSR_1 - SSR_2)/k] /
/// [(SSR_1 + SSR_2)/(T - 2k)], F(k, T-2k) p-value. Both sub-samples must
/// have more rows than X has columns.
ChowResult chow_test(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                     Eigen::Index break_index);

}  // namespace spillnet

#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "resspec/residual_test.hpp"

namespace resspec {

enum class LagCriterion { integrated, peak };

LagCriterion lag_criterion_from_name(const std::string& name);
const char* lag_criterion_name(LagCriterion c);

struct LagScore {
    int lag = 0;
    double score = 0.0;
    LagCriterion criterion = LagCriterion::integrated;
    std::vector<double> curve;  // f_{G2G2}(lambda, u) on the grid
};

// f_{G2G2}(lambda, u) for the quadratic lagged covariate x1(t)*x1(t-u), on
// the K = 2 field of (x0, x1, z_u). All series truncated to length
// n_raw - common_truncation (default u) so curves are comparable across u.
std::vector<double> lagged_residual_spectrum(const Eigen::VectorXd& x0, const Eigen::VectorXd& x1,
                                             int u, const TestConfig& config = {},
                                             int common_truncation = -1);

// Scores every candidate u in 0..max_lag on the common n_raw - max_lag
// sample. integrated: sum_g w * f_G2G2(lambda_g, u); peak:
// max_g f_G2G2(lambda_g, u) / f_00(lambda_g).
std::vector<LagScore> score_lags(const Eigen::VectorXd& x0, const Eigen::VectorXd& x1, int max_lag,
                                 LagCriterion criterion, const TestConfig& config = {});

// Argmax of score_lags, ties broken toward the smaller lag.
LagScore select_lag(const Eigen::VectorXd& x0, const Eigen::VectorXd& x1, int max_lag,
                    LagCriterion criterion, const TestConfig& config = {});

// Multi-lag generalization: exhaustive search over {0..max_lag}^{K-1} for the
// covariate prod_j x_j(t - u_j), scored by f_{GKGK} with the same criteria.
struct LagTupleScore {
    std::vector<int> lags;
    double score = 0.0;
    LagCriterion criterion = LagCriterion::integrated;
};

LagTupleScore select_lag_tuple(const Eigen::VectorXd& x0,
                               const std::vector<Eigen::VectorXd>& covariates, int max_lag,
                               LagCriterion criterion, const TestConfig& config = {});

}  // namespace resspec

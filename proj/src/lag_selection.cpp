#include "resspec/lag_selection.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "resspec/decomposition.hpp"
#include "resspec/joint_test.hpp"
#include "spectral_forms.hpp"

namespace resspec {

LagCriterion lag_criterion_from_name(const std::string& name) {
    if (name == "integrated") return LagCriterion::integrated;
    if (name == "peak") return LagCriterion::peak;
    throw std::invalid_argument("unknown lag criterion '" + name +
                                "' (expected integrated or peak)");
}

const char* lag_criterion_name(LagCriterion c) {
    return c == LagCriterion::integrated ? "integrated" : "peak";
}

namespace {

struct SpectrumCurves {
    std::vector<double> residual;  // f_{GKGK}(lambda, u)
    std::vector<double> f00;
};

// f_{GKGK} = |phi_K|^2 / (det f_K * det f_{K-1}) on the estimated field of
// (x0, covariates.., z), where z is the constructed order-K covariate.
SpectrumCurves residual_curves(const MultiSeries& series, const TestConfig& config) {
    const int K = series.covariate_count();
    const LagWindow window = window_constants(config.window);
    const int M = config.bandwidth > 0 ? config.bandwidth
                                       : default_bandwidth(series.n_eff(), config.bandwidth_scale);
    const FrequencyGrid grid = make_grid(config.grid_size);
    const SpectralField f = estimate_spectral_field(series, window, M, grid);

    SpectrumCurves out;
    out.residual.resize(f.node_count());
    out.f00.resize(f.node_count());
    for (std::size_t g = 0; g < f.node_count(); ++g) {
        const Eigen::MatrixXcd& z = f.at(g);
        const double scale = z.cwiseAbs().maxCoeff() + 1e-300;
        const double det_k =
            detail::real_checked(detail::det(z.block(1, 1, K, K)),
                                 std::pow(scale, K) + 1e-300, "det f_K");
        const double det_k1 =
            detail::real_checked(detail::det(z.block(1, 1, K - 1, K - 1)),
                                 std::pow(scale, K - 1) + 1e-300, "det f_{K-1}");
        const double denom = det_k * det_k1;
        const double num = std::norm(phi_value(z, K));
        out.residual[g] = denom > 0.0 ? std::max(0.0, num / denom) : 0.0;
        out.f00[g] = z(0, 0).real();
    }
    return out;
}

double score_of(const SpectrumCurves& c, LagCriterion criterion, double weight) {
    if (criterion == LagCriterion::integrated) {
        double s = 0.0;
        for (double v : c.residual) s += v;
        return weight * s;
    }
    double peak = 0.0;
    for (std::size_t g = 0; g < c.residual.size(); ++g) {
        peak = std::max(peak, c.residual[g] / c.f00[g]);
    }
    return peak;
}

}  // namespace

std::vector<double> lagged_residual_spectrum(const Eigen::VectorXd& x0, const Eigen::VectorXd& x1,
                                             int u, const TestConfig& config,
                                             int common_truncation) {
    if (u < 0) throw std::invalid_argument("lag must be nonnegative");
    const MultiSeries series =
        build_lagged_series(x0, {x1}, {u}, quadratic_lag_map, common_truncation);
    return residual_curves(series, config).residual;
}

std::vector<LagScore> score_lags(const Eigen::VectorXd& x0, const Eigen::VectorXd& x1, int max_lag,
                                 LagCriterion criterion, const TestConfig& config) {
    if (max_lag < 0) throw std::invalid_argument("max_lag must be >= 0");
    const double weight = 2.0 * std::numbers::pi / static_cast<double>(config.grid_size);
    std::vector<LagScore> scores;
    scores.reserve(static_cast<std::size_t>(max_lag) + 1);
    for (int u = 0; u <= max_lag; ++u) {
        const MultiSeries series =
            build_lagged_series(x0, {x1}, {u}, quadratic_lag_map, max_lag);
        const SpectrumCurves curves = residual_curves(series, config);
        LagScore s;
        s.lag = u;
        s.criterion = criterion;
        s.score = score_of(curves, criterion, weight);
        s.curve = curves.residual;
        scores.push_back(std::move(s));
    }
    return scores;
}

LagScore select_lag(const Eigen::VectorXd& x0, const Eigen::VectorXd& x1, int max_lag,
                    LagCriterion criterion, const TestConfig& config) {
    auto scores = score_lags(x0, x1, max_lag, criterion, config);
    std::size_t best = 0;
    for (std::size_t u = 1; u < scores.size(); ++u) {
        if (scores[u].score > scores[best].score) best = u;  // ties keep the smaller lag
    }
    return scores[best];
}

LagTupleScore select_lag_tuple(const Eigen::VectorXd& x0,
                               const std::vector<Eigen::VectorXd>& covariates, int max_lag,
                               LagCriterion criterion, const TestConfig& config) {
    if (covariates.empty()) throw std::invalid_argument("need at least one covariate");
    if (max_lag < 0) throw std::invalid_argument("max_lag must be >= 0");
    const int D = static_cast<int>(covariates.size());  // tuple length K-1
    const double weight = 2.0 * std::numbers::pi / static_cast<double>(config.grid_size);

    std::vector<int> tuple(static_cast<std::size_t>(D), 0);
    LagTupleScore best;
    best.criterion = criterion;
    best.score = -1.0;
    bool done = false;
    while (!done) {
        const LagMap map = [&](const Eigen::MatrixXd& covs, Eigen::Index t, int) {
            double v = 1.0;
            for (int j = 0; j < D; ++j) v *= covs(t - tuple[static_cast<std::size_t>(j)], j);
            return v;
        };
        const MultiSeries series = build_lagged_series(x0, covariates, {0}, map, max_lag);
        const double score = score_of(residual_curves(series, config), criterion, weight);
        if (score > best.score) {
            best.score = score;
            best.lags = tuple;
        }
        // odometer over {0..max_lag}^D, smallest-tuple-first so ties keep it
        done = true;
        for (int j = D - 1; j >= 0; --j) {
            if (tuple[static_cast<std::size_t>(j)] < max_lag) {
                ++tuple[static_cast<std::size_t>(j)];
                std::fill(tuple.begin() + j + 1, tuple.end(), 0);
                done = false;
                break;
            }
        }
    }
    return best;
}

}  // namespace resspec

#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace resspec {

// Aligned real-valued observations: response column 0 plus covariates 1..K,
// all of common effective length n_eff = n_raw - max_construction_lag.
// Immutable after construction; columns are contiguous (column-major).
class MultiSeries {
public:
    static constexpr Eigen::Index kMinLength = 8;

    // data: rows = time 1..n_eff, columns = series 0..K. Throws
    // std::invalid_argument on non-finite entries, n_eff < 8, or a length
    // mismatch with n_raw - max_construction_lag.
    MultiSeries(Eigen::MatrixXd data, Eigen::Index n_raw, int max_construction_lag,
                std::vector<std::string> labels = {});

    // Convenience for series that were observed directly (no constructed lags).
    static MultiSeries from_columns(const std::vector<Eigen::VectorXd>& columns,
                                    std::vector<std::string> labels = {});

    const Eigen::MatrixXd& data() const noexcept { return data_; }
    Eigen::VectorXd column(Eigen::Index i) const { return data_.col(i); }

    Eigen::Index n_eff() const noexcept { return data_.rows(); }
    Eigen::Index n_raw() const noexcept { return n_raw_; }
    int max_construction_lag() const noexcept { return max_lag_; }
    Eigen::Index series_count() const noexcept { return data_.cols(); }
    int covariate_count() const noexcept { return static_cast<int>(data_.cols()) - 1; }

    const std::string& label(Eigen::Index i) const { return labels_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

private:
    Eigen::MatrixXd data_;
    Eigen::Index n_raw_;
    int max_lag_;
    std::vector<std::string> labels_;
};

}  // namespace resspec

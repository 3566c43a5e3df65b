#include "resspec/series.hpp"

#include <stdexcept>
#include <string>

namespace resspec {

MultiSeries::MultiSeries(Eigen::MatrixXd data, Eigen::Index n_raw, int max_construction_lag,
                         std::vector<std::string> labels)
    : data_(std::move(data)), n_raw_(n_raw), max_lag_(max_construction_lag),
      labels_(std::move(labels)) {
    if (max_lag_ < 0) throw std::invalid_argument("max_construction_lag must be >= 0");
    if (data_.cols() < 1) throw std::invalid_argument("series table has no columns");
    if (data_.rows() != n_raw_ - max_lag_) {
        throw std::invalid_argument("effective length " + std::to_string(data_.rows()) +
                                    " != n_raw - max_construction_lag = " +
                                    std::to_string(n_raw_ - max_lag_));
    }
    if (data_.rows() < kMinLength) {
        throw std::invalid_argument("effective length " + std::to_string(data_.rows()) +
                                    " is below the minimum of " + std::to_string(kMinLength));
    }
    if (!data_.allFinite()) throw std::invalid_argument("series contain non-finite entries");
    if (labels_.empty()) {
        labels_.reserve(static_cast<std::size_t>(data_.cols()));
        for (Eigen::Index i = 0; i < data_.cols(); ++i) {
            labels_.push_back(i == 0 ? "x0" : "x" + std::to_string(i));
        }
    }
    if (static_cast<Eigen::Index>(labels_.size()) != data_.cols()) {
        throw std::invalid_argument("label count does not match column count");
    }
}

MultiSeries MultiSeries::from_columns(const std::vector<Eigen::VectorXd>& columns,
                                      std::vector<std::string> labels) {
    if (columns.empty()) throw std::invalid_argument("no columns given");
    const Eigen::Index n = columns.front().size();
    Eigen::MatrixXd m(n, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].size() != n) {
            throw std::invalid_argument("column " + std::to_string(i) + " has length " +
                                        std::to_string(columns[i].size()) + ", expected " +
                                        std::to_string(n));
        }
        m.col(static_cast<Eigen::Index>(i)) = columns[i];
    }
    return MultiSeries(std::move(m), n, 0, std::move(labels));
}

}  // namespace resspec

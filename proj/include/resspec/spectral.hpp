#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "resspec/frequency_grid.hpp"
#include "resspec/lag_window.hpp"
#include "resspec/series.hpp"

namespace resspec {

// Kernel spectral density estimate: one (K+1)x(K+1) complex matrix per grid
// node. Hermitian at every node by construction (upper triangle computed,
// lower mirrored), and conjugate-symmetric across frequency:
// f(-lambda) = conj(f(lambda)) exactly.
struct SpectralField {
    FrequencyGrid grid;
    std::vector<Eigen::MatrixXcd> nodes;  // grid.size() matrices
    int dims = 0;                         // K+1
    int bandwidth = 0;                    // M used
    std::string window;

    const Eigen::MatrixXcd& at(std::size_t g) const { return nodes[g]; }
    std::size_t node_count() const noexcept { return nodes.size(); }
};

// gamma_ij(h) with divisor n_eff - |h| and the common mean over the n_eff
// sample; gamma_ij(h) = gamma_ji(-h). |h| <= n_eff - 2 required.
double sample_autocovariance(const MultiSeries& x, Eigen::Index i, Eigen::Index j, int h);

// M = max(4, round(scale * n_eff^0.3)); the 0.3 exponent sits strictly inside
// (2/9, 1/3), so n/M^{9/2} -> 0 and n/M^3 -> infinity both hold.
int default_bandwidth(Eigen::Index n_eff, double scale = 1.5);

// Windowed lag-sum estimate over the grid. Throws singular_input_error for a
// zero-variance column, std::invalid_argument for M < 2.
SpectralField estimate_spectral_field(const MultiSeries& x, const LagWindow& window, int bandwidth,
                                      const FrequencyGrid& grid);

}  // namespace resspec

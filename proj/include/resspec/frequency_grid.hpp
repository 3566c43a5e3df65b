#pragma once

#include <cstddef>
#include <vector>

namespace resspec {

// Uniform grid lambda_j = -pi + 2*pi*j/N, j = 1..N, with Riemann weight
// 2*pi/N per node. N is even, so the grid is closed under negation up to the
// wrap -pi ~ pi, contains 0 and pi exactly, and rectangle-rule quadrature of
// smooth periodic integrands converges spectrally.
class FrequencyGrid {
public:
    static constexpr std::size_t kDefaultSize = 512;

    FrequencyGrid() = default;  // empty; make_grid builds usable grids

    const std::vector<double>& frequencies() const noexcept { return freq_; }
    double frequency(std::size_t g) const { return freq_[g]; }
    double weight() const noexcept { return weight_; }
    std::size_t size() const noexcept { return freq_.size(); }

    // Node index of -lambda_g (lambda = pi maps to itself via the wrap).
    std::size_t reflect(std::size_t g) const noexcept {
        const std::size_t n = freq_.size();
        return g == n - 1 ? n - 1 : n - 2 - g;
    }

    friend FrequencyGrid make_grid(std::size_t n_nodes);

private:
    std::vector<double> freq_;
    double weight_ = 0.0;
};

// n_nodes must be even and >= 64; throws std::invalid_argument otherwise.
FrequencyGrid make_grid(std::size_t n_nodes = FrequencyGrid::kDefaultSize);

}  // namespace resspec

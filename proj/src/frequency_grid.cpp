#include "resspec/frequency_grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace resspec {

FrequencyGrid make_grid(std::size_t n_nodes) {
    if (n_nodes < 64 || n_nodes % 2 != 0) {
        throw std::invalid_argument("grid size must be even and >= 64, got " +
                                    std::to_string(n_nodes));
    }
    FrequencyGrid g;
    g.freq_.resize(n_nodes);
    const double pi = std::numbers::pi;
    for (std::size_t j = 1; j <= n_nodes; ++j) {
        g.freq_[j - 1] = -pi + 2.0 * pi * static_cast<double>(j) / static_cast<double>(n_nodes);
    }
    g.freq_[n_nodes - 1] = pi;  // exact endpoint
    g.freq_[n_nodes / 2 - 1] = 0.0;
    g.weight_ = 2.0 * pi / static_cast<double>(n_nodes);
    return g;
}

}  // namespace resspec

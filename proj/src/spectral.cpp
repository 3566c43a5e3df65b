#include "resspec/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "resspec/errors.hpp"
#include "resspec/kernels.hpp"

namespace resspec {

double sample_autocovariance(const MultiSeries& x, Eigen::Index i, Eigen::Index j, int h) {
    const Eigen::Index n = x.n_eff();
    if (i < 0 || i >= x.series_count() || j < 0 || j >= x.series_count()) {
        throw std::invalid_argument("series index out of range");
    }
    if (std::abs(h) > n - 2) {
        throw std::invalid_argument("lag " + std::to_string(h) + " exceeds n_eff - 2 = " +
                                    std::to_string(n - 2));
    }
    if (h < 0) return sample_autocovariance(x, j, i, -h);
    const Eigen::VectorXd ci = x.data().col(i).array() - x.data().col(i).mean();
    const Eigen::VectorXd cj = x.data().col(j).array() - x.data().col(j).mean();
    const Eigen::Index m = n - h;
    return kernels::dot(ci.data() + h, cj.data(), static_cast<std::size_t>(m)) /
           static_cast<double>(m);
}

int default_bandwidth(Eigen::Index n_eff, double scale) {
    if (n_eff < MultiSeries::kMinLength) {
        throw std::invalid_argument("n_eff must be >= 8 for bandwidth selection");
    }
    const double m = scale * std::pow(static_cast<double>(n_eff), 0.3);
    return std::max(4, static_cast<int>(std::lround(m)));
}

SpectralField estimate_spectral_field(const MultiSeries& x, const LagWindow& window, int bandwidth,
                                      const FrequencyGrid& grid) {
    if (bandwidth < 2) throw std::invalid_argument("bandwidth must be >= 2");
    const Eigen::Index n = x.n_eff();
    const Eigen::Index P = x.series_count();
    const std::size_t N = grid.size();
    const double two_pi = 2.0 * std::numbers::pi;

    Eigen::MatrixXd centered(n, P);
    for (Eigen::Index c = 0; c < P; ++c) {
        centered.col(c) = x.data().col(c).array() - x.data().col(c).mean();
        const double var0 =
            kernels::dot(centered.col(c).data(), centered.col(c).data(),
                         static_cast<std::size_t>(n)) /
            static_cast<double>(n);
        if (!(var0 > 0.0)) {
            throw singular_input_error("series '" + x.label(c) + "' has zero variance");
        }
    }

    const int H = std::min<int>(window.support_lags(bandwidth), static_cast<int>(n) - 2);
    std::vector<double> w(static_cast<std::size_t>(H) + 1);
    for (int h = 0; h <= H; ++h) w[static_cast<std::size_t>(h)] = window(static_cast<double>(h) / bandwidth);

    // Trig tables on the upper half-grid lambda in [0, pi]; the lower half is
    // filled by conjugate reflection, which makes f(-lambda) = conj(f(lambda))
    // exact. sin(h*0) = 0 and sin(h*pi) = 0 are forced exactly.
    const std::size_t half = N / 2;        // node count strictly above 0: (0, pi]
    const std::size_t nh = half + 1;       // [0, pi]
    const std::size_t g0 = half - 1;       // grid index of lambda = 0
    std::vector<std::vector<double>> cos_tab(static_cast<std::size_t>(H)),
        sin_tab(static_cast<std::size_t>(H));
    for (int h = 1; h <= H; ++h) {
        auto& ct = cos_tab[static_cast<std::size_t>(h - 1)];
        auto& st = sin_tab[static_cast<std::size_t>(h - 1)];
        ct.resize(nh);
        st.resize(nh);
        for (std::size_t k = 0; k < nh; ++k) {
            const double lambda = grid.frequency(g0 + k);
            ct[k] = std::cos(h * lambda);
            st[k] = std::sin(h * lambda);
        }
        ct[0] = 1.0;
        st[0] = 0.0;
        st[nh - 1] = 0.0;
    }

    SpectralField field;
    field.grid = grid;
    field.dims = static_cast<int>(P);
    field.bandwidth = bandwidth;
    field.window = window.name;
    field.nodes.assign(N, Eigen::MatrixXcd::Zero(P, P));

    std::vector<double> gp(static_cast<std::size_t>(H) + 1), gm(static_cast<std::size_t>(H) + 1);
    std::vector<double> re(nh), im(nh);
    for (Eigen::Index i = 0; i < P; ++i) {
        for (Eigen::Index j = i; j < P; ++j) {
            const double* ci = centered.col(i).data();
            const double* cj = centered.col(j).data();
            for (int h = 0; h <= H; ++h) {
                const std::size_t m = static_cast<std::size_t>(n - h);
                gp[static_cast<std::size_t>(h)] = kernels::dot(ci + h, cj, m) / static_cast<double>(m);
                gm[static_cast<std::size_t>(h)] =
                    i == j ? gp[static_cast<std::size_t>(h)]
                           : kernels::dot(cj + h, ci, m) / static_cast<double>(m);
            }
            std::fill(re.begin(), re.end(), gp[0]);
            std::fill(im.begin(), im.end(), 0.0);
            for (int h = 1; h <= H; ++h) {
                const double wh = w[static_cast<std::size_t>(h)];
                if (wh == 0.0) continue;
                const double s = wh * (gp[static_cast<std::size_t>(h)] + gm[static_cast<std::size_t>(h)]);
                kernels::axpy(re.data(), cos_tab[static_cast<std::size_t>(h - 1)].data(), s, nh);
                if (i != j) {
                    const double d =
                        wh * (gp[static_cast<std::size_t>(h)] - gm[static_cast<std::size_t>(h)]);
                    kernels::axpy(im.data(), sin_tab[static_cast<std::size_t>(h - 1)].data(), -d, nh);
                }
            }
            for (std::size_t k = 0; k < nh; ++k) {
                const std::complex<double> v(re[k] / two_pi, im[k] / two_pi);
                const std::size_t g = g0 + k;
                field.nodes[g](i, j) = v;
                field.nodes[g](j, i) = std::conj(v);
                if (g > g0 && g < N - 1) {
                    const std::size_t gr = N - 2 - g;
                    field.nodes[gr](i, j) = std::conj(v);
                    field.nodes[gr](j, i) = v;
                }
            }
        }
    }
    return field;
}

}  // namespace resspec

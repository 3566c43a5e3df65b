#include "resspec/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "resspec/errors.hpp"
#include "spectral_forms.hpp"

namespace resspec {

using detail::Complex;

std::complex<double> phi_value(const Eigen::MatrixXcd& z, int K) {
    if (K < 1 || z.rows() < K + 1 || z.cols() < K + 1) {
        throw std::invalid_argument("phi_value: matrix smaller than (K+1)x(K+1)");
    }
    if (K == 1) return z(1, 0);
    Complex s = 0.0;
    for (int i = 1; i < K; ++i) {
        s += detail::det(detail::row_replaced_block(z, K, i)) * z(i, 0);
    }
    return s - detail::det(z.block(1, 1, K - 1, K - 1)) * z(K, 0);
}

Eigen::MatrixXcd phi_gradient(const Eigen::MatrixXcd& z, int K) {
    const Eigen::Index P = z.rows();
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(P, P);
    if (K == 1) {
        g(1, 0) = 1.0;
        return g;
    }
    const Eigen::MatrixXcd block = z.block(1, 1, K - 1, K - 1);
    std::vector<Eigen::MatrixXcd> rows(static_cast<std::size_t>(K - 1));
    std::vector<Eigen::MatrixXcd> row_cof(static_cast<std::size_t>(K - 1));
    for (int i = 1; i < K; ++i) {
        rows[static_cast<std::size_t>(i - 1)] = detail::row_replaced_block(z, K, i);
        row_cof[static_cast<std::size_t>(i - 1)] =
            detail::cofactor_matrix(rows[static_cast<std::size_t>(i - 1)]);
    }
    for (int i = 1; i < K; ++i) g(i, 0) = detail::det(rows[static_cast<std::size_t>(i - 1)]);
    g(K, 0) = -detail::det(block);
    const Eigen::MatrixXcd block_cof = detail::cofactor_matrix(block);
    for (int a = 1; a < K; ++a) {
        for (int b = 1; b < K; ++b) {
            Complex v = -z(K, 0) * block_cof(a - 1, b - 1);
            for (int i = 1; i < K; ++i) {
                if (i == a) continue;
                v += z(i, 0) * row_cof[static_cast<std::size_t>(i - 1)](a - 1, b - 1);
            }
            g(a, b) = v;
        }
    }
    for (int b = 1; b < K; ++b) {
        Complex v = 0.0;
        for (int i = 1; i < K; ++i) {
            v += z(i, 0) * row_cof[static_cast<std::size_t>(i - 1)](i - 1, b - 1);
        }
        g(K, b) = v;
    }
    return g;
}

std::vector<std::complex<double>> phi_k(const SpectralField& f) {
    const int K = f.dims - 1;
    std::vector<Complex> out(f.node_count());
    for (std::size_t g = 0; g < f.node_count(); ++g) out[g] = phi_value(f.at(g), K);
    return out;
}

namespace {

// Condition gate on the leading covariate blocks f_1 .. f_K of one node.
void check_blocks(const Eigen::MatrixXcd& f, int K, std::size_t node) {
    for (int j = 1; j <= K; ++j) {
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(f.block(1, 1, j, j));
        if (!(lu.rcond() > 1e-12)) {
            throw singular_spectrum_error(
                "covariate block f_" + std::to_string(j) + " is singular or too ill-conditioned",
                node);
        }
    }
}

}  // namespace

Decomposition transfer_functions(const SpectralField& f) {
    const int K = f.dims - 1;
    if (K < 1) throw std::invalid_argument("spectral field has no covariates");
    const std::size_t N = f.node_count();

    Decomposition dec;
    dec.covariates = K;
    dec.grid = f.grid;
    dec.transfer.assign(static_cast<std::size_t>(K * (K + 1) / 2),
                        std::vector<Complex>(N));

    for (std::size_t g = 0; g < N; ++g) {
        const Eigen::MatrixXcd& z = f.at(g);
        check_blocks(z, K, g);
        Complex det_prev = 1.0;  // det f_{j-1}
        for (int j = 1; j <= K; ++j) {
            const Complex det_j = detail::det(z.block(1, 1, j, j));
            Complex ajj;
            if (j == 1) {
                ajj = z(1, 0) / z(1, 1);
            } else {
                Complex num = det_prev * z(j, 0);
                for (int i = 1; i < j; ++i) {
                    num -= std::conj(detail::det(detail::column_replaced_block(z, j, i))) * z(i, 0);
                }
                ajj = num / det_j;
            }
            const std::size_t base = static_cast<std::size_t>(j * (j - 1) / 2);
            dec.transfer[base + static_cast<std::size_t>(j - 1)][g] = ajj;
            for (int d = 1; d < j; ++d) {
                const Complex ratio =
                    detail::det(detail::column_replaced_block(z, j, d)) / det_prev;
                dec.transfer[base + static_cast<std::size_t>(d - 1)][g] = -ratio * ajj;
            }
            det_prev = det_j;
        }
    }
    return dec;
}

void residual_spectra(const SpectralField& f, Decomposition& dec) {
    const int K = dec.covariates;
    const std::size_t N = f.node_count();
    if (dec.transfer.empty()) throw std::invalid_argument("transfer functions not computed");
    dec.residual_spectra.assign(static_cast<std::size_t>(K), std::vector<double>(N));

    for (std::size_t g = 0; g < N; ++g) {
        const Eigen::MatrixXcd& z = f.at(g);
        const double scale = z.cwiseAbs().maxCoeff() + 1e-300;
        Complex det_prev = 1.0;
        for (int j = 1; j <= K; ++j) {
            const Complex det_j = detail::det(z.block(1, 1, j, j));
            const Complex ajj = dec.transfer_at(j, j)[g];
            const Complex ratio = det_j / det_prev;
            const double value =
                std::norm(ajj) * detail::real_checked(ratio, scale, "det ratio f_j/f_{j-1}");
            dec.residual_spectra[static_cast<std::size_t>(j - 1)][g] = std::max(0.0, value);
            det_prev = det_j;
        }
    }
}

std::vector<double> coherence_of_order(const SpectralField& f, const Decomposition& dec, int d) {
    if (d < 1 || d > dec.covariates) throw std::invalid_argument("coherence order out of range");
    if (dec.residual_spectra.empty()) throw std::invalid_argument("residual spectra not computed");
    const std::size_t N = f.node_count();
    std::vector<double> c(N, 0.0);
    for (std::size_t g = 0; g < N; ++g) {
        const double f00 = f.at(g)(0, 0).real();
        double s = 0.0;
        for (int i = 1; i <= d; ++i) s += dec.residual_spectra[static_cast<std::size_t>(i - 1)][g];
        c[g] = std::clamp(s / f00, 0.0, 1.0);
    }
    return c;
}

Decomposition decompose(const SpectralField& f) {
    Decomposition dec = transfer_functions(f);
    residual_spectra(f, dec);
    dec.coherence.reserve(static_cast<std::size_t>(dec.covariates));
    for (int d = 1; d <= dec.covariates; ++d) {
        dec.coherence.push_back(coherence_of_order(f, dec, d));
    }
    return dec;
}

std::vector<double> filter_coefficients(const Decomposition& dec, int j, int d, int k_min,
                                        int k_max) {
    if (j < 1 || j > dec.covariates || d < 1 || d > j) {
        throw std::invalid_argument("filter index (j,d) out of range");
    }
    if (k_min > k_max) throw std::invalid_argument("empty coefficient range");
    const auto& a = dec.transfer_at(j, d);
    const std::size_t N = dec.grid.size();
    const double w = dec.grid.weight() / (2.0 * std::numbers::pi);
    double sup = 0.0;
    for (std::size_t g = 0; g < N; ++g) sup = std::max(sup, std::abs(a[g]));

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(k_max - k_min + 1));
    for (int k = k_min; k <= k_max; ++k) {
        Complex s = 0.0;
        for (std::size_t g = 0; g < N; ++g) {
            const double ang = -k * dec.grid.frequency(g);
            s += a[g] * Complex(std::cos(ang), std::sin(ang));
        }
        s *= w;
        out.push_back(detail::real_checked(s, std::max(1.0, sup), "filter coefficient"));
    }
    return out;
}

std::vector<double> regression_coefficients(const Decomposition& dec, int i, int k_min,
                                            int k_max) {
    if (i < 1 || i > dec.covariates) throw std::invalid_argument("covariate index out of range");
    std::vector<double> b(static_cast<std::size_t>(k_max - k_min + 1), 0.0);
    for (int j = i; j <= dec.covariates; ++j) {
        const auto a = filter_coefficients(dec, j, i, k_min, k_max);
        for (std::size_t k = 0; k < b.size(); ++k) b[k] += a[k];
    }
    return b;
}

}  // namespace resspec

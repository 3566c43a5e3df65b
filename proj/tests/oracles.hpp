// Test-only oracles, independent of the library's implementation paths:
// naive cofactor determinants, quadrature, analytic spectral fields.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include "resspec/decomposition.hpp"
#include "resspec/spectral.hpp"

namespace oracles {

using Complex = std::complex<double>;

// Recursive cofactor-expansion determinant (no LU anywhere).
inline Complex naive_det(const Eigen::MatrixXcd& a) {
    const Eigen::Index d = a.rows();
    if (d == 0) return 1.0;
    if (d == 1) return a(0, 0);
    Complex sum = 0.0;
    Eigen::MatrixXcd minor(d - 1, d - 1);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index r = 1; r < d; ++r) {
            Eigen::Index ms = 0;
            for (Eigen::Index s = 0; s < d; ++s) {
                if (s == j) continue;
                minor(r - 1, ms++) = a(r, s);
            }
        }
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        sum += sign * a(0, j) * naive_det(minor);
    }
    return sum;
}

// Composite Simpson on [a,b] with n panels (n even).
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline Eigen::MatrixXcd random_hermitian_pd(int dim, std::mt19937_64& rng, double ridge = -1.0) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd b(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) b(i, j) = Complex(normal(rng), normal(rng));
    }
    if (ridge < 0.0) ridge = dim;
    return b * b.adjoint() + ridge * Eigen::MatrixXcd::Identity(dim, dim);
}

// Adjusts f_K0 (and its mirror) so phi_K(f) = 0; keeps Hermitian structure.
inline void constrain_to_null(Eigen::MatrixXcd& f, int K) {
    if (K == 1) {
        f(1, 0) = 0.0;
        f(0, 1) = 0.0;
        return;
    }
    Complex s = 0.0;
    for (int i = 1; i < K; ++i) {
        Eigen::MatrixXcd r = f.block(1, 1, K - 1, K - 1);
        r.row(i - 1) = f.row(K).segment(1, K - 1);
        s += naive_det(r) * f(i, 0);
    }
    const Complex fk0 = s / naive_det(f.block(1, 1, K - 1, K - 1));
    f(K, 0) = fk0;
    f(0, K) = std::conj(fk0);
}

// Smooth random analytic field: f(lambda) = B(lambda) B(lambda)^* / (2 pi)
// + ridge, with B(lambda) = C0 + C1 e^{-i lambda}, C0/C1 real. Hermitian PD
// and reflection-symmetric (f(-lambda) = conj f(lambda)) by construction.
struct AnalyticField {
    Eigen::MatrixXd c0, c1;
    double ridge;

    Eigen::MatrixXcd operator()(double lambda) const {
        const Complex e(std::cos(lambda), -std::sin(lambda));
        Eigen::MatrixXcd b = c0.cast<Complex>() + e * c1.cast<Complex>();
        Eigen::MatrixXcd f = b * b.adjoint() / (2.0 * std::numbers::pi);
        f += ridge * Eigen::MatrixXcd::Identity(f.rows(), f.cols());
        return f;
    }
};

inline AnalyticField random_analytic_field(int dim, std::mt19937_64& rng, double ridge = 0.05) {
    std::normal_distribution<double> normal;
    AnalyticField a;
    a.c0.resize(dim, dim);
    a.c1.resize(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            a.c0(i, j) = normal(rng);
            a.c1(i, j) = 0.5 * normal(rng);
        }
    }
    a.ridge = ridge;
    return a;
}

inline resspec::SpectralField field_from_function(
    const resspec::FrequencyGrid& grid, int dim,
    const std::function<Eigen::MatrixXcd(double)>& fn, int bandwidth = 9,
    const std::string& window = "parzen") {
    resspec::SpectralField f;
    f.grid = grid;
    f.dims = dim;
    f.bandwidth = bandwidth;
    f.window = window;
    f.nodes.reserve(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) f.nodes.push_back(fn(grid.frequency(g)));
    return f;
}

// AR(1) spectral density sigma^2 / (2 pi |1 - phi e^{-i lambda}|^2).
inline double ar1_spectrum(double lambda, double phi, double sigma2 = 1.0) {
    const double denom = 1.0 + phi * phi - 2.0 * phi * std::cos(lambda);
    return sigma2 / (2.0 * std::numbers::pi * denom);
}

}  // namespace oracles

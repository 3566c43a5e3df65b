#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "resspec/spectral.hpp"

namespace resspec {

// Orthogonal decomposition of the regression: transfer functions
// A_jd(e^{i lambda}) for 1 <= d <= j <= K, residual spectra f_{GjGj} >= 0,
// and cumulative coherences C_1 <= ... <= C_K <= 1 on the grid.
struct Decomposition {
    int covariates = 0;  // K
    FrequencyGrid grid;
    // transfer(j,d): flat upper-triangular storage, one complex curve each
    std::vector<std::vector<std::complex<double>>> transfer;
    std::vector<std::vector<double>> residual_spectra;  // [j-1][g], j = 1..K
    std::vector<std::vector<double>> coherence;         // [d-1][g], d = 1..K

    const std::vector<std::complex<double>>& transfer_at(int j, int d) const {
        return transfer[static_cast<std::size_t>(j * (j - 1) / 2 + d - 1)];
    }
};

// Numerator functional of A_KK, as a polynomial in the matrix entries
// (conjugates re-expressed through Hermitian symmetry, so the function is
// holomorphic and phi_gradient below is its complex derivative).
// K = 1: z_10. K >= 2: sum_i det(R_i) z_i0 - det(Z_{K-1}) z_K0, where R_i is
// Z_{K-1} with row i replaced by (z_K1 .. z_K,K-1).
std::complex<double> phi_value(const Eigen::MatrixXcd& z, int K);

// d phi / d z_ab, same shape as z; entries outside rows {1..K} x cols
// {0..K-1} are identically zero.
Eigen::MatrixXcd phi_gradient(const Eigen::MatrixXcd& z, int K);

// phi_K evaluated at every grid node.
std::vector<std::complex<double>> phi_k(const SpectralField& f);

// Transfer functions per the determinant formulas, LU-factorized with partial
// pivoting. Throws singular_spectrum_error (naming the node) if a leading
// covariate block is singular or has condition number above 1e12.
Decomposition transfer_functions(const SpectralField& f);

// Fills residual_spectra from the |A_jj|^2 det-ratio formula. Values are
// checked real to 1e-8 relative imaginary residue, clamped to >= 0.
void residual_spectra(const SpectralField& f, Decomposition& dec);

// C_d = sum_{i<=d} f_{GiGi} / f_00, clamped to [0,1].
std::vector<double> coherence_of_order(const SpectralField& f, const Decomposition& dec, int d);

// transfer_functions + residual_spectra + all coherences.
Decomposition decompose(const SpectralField& f);

// a_jd(k) = (1/2pi) int A_jd(e^{i lambda}) e^{-ik lambda} d lambda, evaluated
// by grid quadrature for k in [k_min, k_max]; real to 1e-8 residue.
std::vector<double> filter_coefficients(const Decomposition& dec, int j, int d, int k_min,
                                        int k_max);

// b_i(k) = sum_{j >= i} a_ji(k), same k range convention.
std::vector<double> regression_coefficients(const Decomposition& dec, int i, int k_min, int k_max);

}  // namespace resspec

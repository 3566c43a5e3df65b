// Internal building blocks shared by the decomposition and the test
// statistics: complex determinants, cofactor matrices, the phi functional
// with its derivative, and the Schur-complement bias integrand.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>

#include "resspec/errors.hpp"

namespace resspec::detail {

using Complex = std::complex<double>;

// Imaginary residue budget for analytically-real quantities.
inline constexpr double kImagTol = 1e-8;

inline Complex det(const Eigen::MatrixXcd& a) {
    switch (a.rows()) {
        case 0:
            return 1.0;
        case 1:
            return a(0, 0);
        case 2:
            return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        default:
            return Eigen::PartialPivLU<Eigen::MatrixXcd>(a).determinant();
    }
}

// C_ij = d det(A) / d a_ij = (-1)^{i+j} * minor_ij(A). Minor-based, so it is
// well defined for singular A too; dimensions here never exceed K+L.
inline Eigen::MatrixXcd cofactor_matrix(const Eigen::MatrixXcd& a) {
    const Eigen::Index d = a.rows();
    Eigen::MatrixXcd c(d, d);
    if (d == 1) {
        c(0, 0) = 1.0;
        return c;
    }
    if (d == 2) {
        c(0, 0) = a(1, 1);
        c(0, 1) = -a(1, 0);
        c(1, 0) = -a(0, 1);
        c(1, 1) = a(0, 0);
        return c;
    }
    Eigen::MatrixXcd minor(d - 1, d - 1);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index r = 0, mr = 0; r < d; ++r) {
                if (r == i) continue;
                for (Eigen::Index s = 0, ms = 0; s < d; ++s) {
                    if (s == j) continue;
                    minor(mr, ms) = a(r, s);
                    ++ms;
                }
                ++mr;
            }
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            c(i, j) = sign * det(minor);
        }
    }
    return c;
}

// Checks the imaginary residue of an analytically-real value against
// kImagTol * scale and returns the real part.
inline double real_checked(Complex v, double scale, const char* what) {
    if (std::abs(v.imag()) > kImagTol * scale) {
        throw internal_consistency_error(std::string(what) + ": imaginary residue " +
                                         std::to_string(v.imag()) + " exceeds budget at scale " +
                                         std::to_string(scale));
    }
    return v.real();
}

// Z_{K-1} with row i (1-based in 1..K-1) replaced by (z_K1 .. z_K,K-1).
inline Eigen::MatrixXcd row_replaced_block(const Eigen::MatrixXcd& z, int K, int i) {
    Eigen::MatrixXcd r = z.block(1, 1, K - 1, K - 1);
    r.row(i - 1) = z.row(K).segment(1, K - 1);
    return r;
}

// Column-replacement matrix of the Cramer systems: f_{j-1} with column d
// (1-based) replaced by (f_{1j} .. f_{j-1,j}).
inline Eigen::MatrixXcd column_replaced_block(const Eigen::MatrixXcd& z, int j, int d) {
    Eigen::MatrixXcd r = z.block(1, 1, j - 1, j - 1);
    r.col(d - 1) = z.col(j).segment(1, j - 1);
    return r;
}

// (det f_{K-1})^2 * S_0 * S_K at one node, where S_0 / S_K are the Schur
// complements of the covariate block in the {1..K-1, 0} / {1..K-1, K}
// principal submatrices. Throws singular_spectrum_error if the covariate
// block is singular (rcond <= 1e-12).
inline double schur_bias_integrand(const Eigen::MatrixXcd& f, int K, std::size_t node) {
    const double scale = f.cwiseAbs().maxCoeff() + 1e-300;
    if (K == 1) {
        return real_checked(f(0, 0), scale, "f_00") * real_checked(f(1, 1), scale, "f_KK");
    }
    const Eigen::MatrixXcd block = f.block(1, 1, K - 1, K - 1);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(block);
    if (!(lu.rcond() > 1e-12)) {
        throw singular_spectrum_error("covariate block f_{K-1} is numerically singular", node);
    }
    const Eigen::VectorXcd f0 = f.col(0).segment(1, K - 1);
    const Eigen::VectorXcd fK = f.col(K).segment(1, K - 1);
    const Complex s0 = f(0, 0) - f0.dot(lu.solve(f0));  // dot() conjugates its left argument
    const Complex sK = f(K, K) - fK.dot(lu.solve(fK));
    const double dd = real_checked(det(block), std::pow(scale, K - 1) + 1e-300, "det f_{K-1}");
    return dd * dd * real_checked(s0, scale, "S_0") * real_checked(sK, scale, "S_K");
}

}  // namespace resspec::detail

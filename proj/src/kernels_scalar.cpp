#include "resspec/kernels.hpp"

namespace resspec::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) noexcept {
    double s0 = 0.0, s1 = 0.0;
    std::size_t i = 0;
    for (; i + 1 < n; i += 2) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
    }
    if (i < n) s0 += a[i] * b[i];
    return s0 + s1;
}

void axpy(double* y, const double* x, double alpha, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum_abs2(const std::complex<double>* z, std::size_t n) noexcept {
    const double* p = reinterpret_cast<const double*>(z);
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s0 += p[2 * i] * p[2 * i];
        s1 += p[2 * i + 1] * p[2 * i + 1];
    }
    return s0 + s1;
}

}  // namespace resspec::kernels::scalar

#pragma once

#include <complex>
#include <cstddef>

namespace resspec::kernels {

enum class Backend { scalar, avx2 };

// Backend in use for the kernels below. Resolved once at startup from CPU
// capabilities; force_backend overrides it (throws std::invalid_argument if
// the requested backend is unavailable on this machine).
Backend active_backend() noexcept;
bool backend_available(Backend b) noexcept;
void force_backend(Backend b);

const char* backend_name(Backend b) noexcept;

// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n) noexcept;

// y[i] += alpha*x[i]
void axpy(double* y, const double* x, double alpha, std::size_t n) noexcept;

// sum_i |z[i]|^2
double sum_abs2(const std::complex<double>* z, std::size_t n) noexcept;

// Reference implementations, always available; the dispatched kernels above
// are equivalence-tested against these.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double* y, const double* x, double alpha, std::size_t n) noexcept;
double sum_abs2(const std::complex<double>* z, std::size_t n) noexcept;
}  // namespace scalar

}  // namespace resspec::kernels

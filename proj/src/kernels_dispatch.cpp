#include "resspec/kernels.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

#if defined(__x86_64__) || defined(_M_X64)
#define RESSPEC_HAVE_AVX2_TU 1
namespace resspec::kernels::avx2 {
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double* y, const double* x, double alpha, std::size_t n) noexcept;
double sum_abs2(const std::complex<double>* z, std::size_t n) noexcept;
}  // namespace resspec::kernels::avx2
#else
#define RESSPEC_HAVE_AVX2_TU 0
#endif

namespace resspec::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if RESSPEC_HAVE_AVX2_TU && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<Backend> g_backend{cpu_has_avx2() ? Backend::avx2 : Backend::scalar};

}  // namespace

Backend active_backend() noexcept { return g_backend.load(std::memory_order_relaxed); }

bool backend_available(Backend b) noexcept {
    return b == Backend::scalar || (b == Backend::avx2 && cpu_has_avx2());
}

void force_backend(Backend b) {
    if (!backend_available(b)) {
        throw std::invalid_argument(std::string("kernel backend '") + backend_name(b) +
                                    "' is not available on this machine");
    }
    g_backend.store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) noexcept {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

double dot(const double* a, const double* b, std::size_t n) noexcept {
#if RESSPEC_HAVE_AVX2_TU
    if (active_backend() == Backend::avx2) return avx2::dot(a, b, n);
#endif
    return scalar::dot(a, b, n);
}

void axpy(double* y, const double* x, double alpha, std::size_t n) noexcept {
#if RESSPEC_HAVE_AVX2_TU
    if (active_backend() == Backend::avx2) return avx2::axpy(y, x, alpha, n);
#endif
    scalar::axpy(y, x, alpha, n);
}

double sum_abs2(const std::complex<double>* z, std::size_t n) noexcept {
#if RESSPEC_HAVE_AVX2_TU
    if (active_backend() == Backend::avx2) return avx2::sum_abs2(z, n);
#endif
    return scalar::sum_abs2(z, n);
}

}  // namespace resspec::kernels

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace nmpl::kernels {

namespace {

using detail::Impl;

const Impl* pick_impl() {
    const char* env = std::getenv("NMPL_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &detail::scalar_impl();
#if defined(NMPL_HAVE_AVX2_TU)
    if (detail::cpu_has_avx2_fma()) return &detail::avx2_impl();
#endif
#if defined(NMPL_HAVE_NEON_TU)
    return &detail::neon_impl();
#endif
    return &detail::scalar_impl();
}

std::atomic<const Impl*>& impl_slot() {
    static std::atomic<const Impl*> slot{pick_impl()};
    return slot;
}

inline const Impl& impl() { return *impl_slot().load(std::memory_order_relaxed); }

}  // namespace

const char* active_isa() { return impl().name; }

void force_scalar(bool on) {
    impl_slot().store(on ? &detail::scalar_impl() : pick_impl());
}

double sum(const double* x, size_t n) { return impl().sum(x, n); }
double dot(const double* x, const double* y, size_t n) { return impl().dot(x, y, n); }
double weighted_diff_sum(const double* vals, const double* w, double u0, size_t n) {
    return impl().weighted_diff_sum(vals, w, u0, n);
}
void axpy(double a, const double* x, double* y, size_t n) { impl().axpy(a, x, y, n); }
MinMax minmax(const double* x, size_t n) { return impl().minmax(x, n); }
double max_signed_diff(const double* a, const double* b, size_t n) {
    return impl().max_signed_diff(a, b, n);
}

}  // namespace nmpl::kernels

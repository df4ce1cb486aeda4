#pragma once

#include <cstddef>

#include "nmpl/kernels.hpp"

// Internal table of per-ISA implementations; filled by the dispatcher.

namespace nmpl::kernels::detail {

struct Impl {
    const char* name;
    double (*sum)(const double*, size_t);
    double (*dot)(const double*, const double*, size_t);
    double (*weighted_diff_sum)(const double*, const double*, double, size_t);
    void (*axpy)(double, const double*, double*, size_t);
    MinMax (*minmax)(const double*, size_t);
    double (*max_signed_diff)(const double*, const double*, size_t);
};

const Impl& scalar_impl();

#if defined(NMPL_HAVE_AVX2_TU)
const Impl& avx2_impl();
bool cpu_has_avx2_fma();
#endif
#if defined(NMPL_HAVE_NEON_TU)
const Impl& neon_impl();
#endif

}  // namespace nmpl::kernels::detail

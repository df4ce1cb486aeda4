#include <immintrin.h>

#include <limits>

#include "kernels_impl.hpp"

// AVX2/FMA variants. Four independent accumulator lanes per op; the lane
// reduction order is fixed so results are reproducible run to run.

namespace nmpl::kernels::detail {
namespace {

inline double hadd(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double sum_avx2(const double* x, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = hadd(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double dot_avx2(const double* x, const double* y, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double s = hadd(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double wds_avx2(const double* vals, const double* w, double u0, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    __m256d vu0 = _mm256_set1_pd(u0);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(vals + i), vu0);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), d, acc);
    }
    double s = hadd(acc);
    for (; i < n; ++i) s += w[i] * (vals[i] - u0);
    return s;
}

void axpy_avx2(double a, const double* x, double* y, size_t n) {
    __m256d va = _mm256_set1_pd(a);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

MinMax minmax_avx2(const double* x, size_t n) {
    MinMax r{std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};
    size_t i = 0;
    if (n >= 4) {
        __m256d vmin = _mm256_loadu_pd(x);
        __m256d vmax = vmin;
        for (i = 4; i + 4 <= n; i += 4) {
            __m256d v = _mm256_loadu_pd(x + i);
            vmin = _mm256_min_pd(vmin, v);
            vmax = _mm256_max_pd(vmax, v);
        }
        alignas(32) double tmin[4], tmax[4];
        _mm256_store_pd(tmin, vmin);
        _mm256_store_pd(tmax, vmax);
        for (int k = 0; k < 4; ++k) {
            if (tmin[k] < r.min) r.min = tmin[k];
            if (tmax[k] > r.max) r.max = tmax[k];
        }
    }
    for (; i < n; ++i) {
        if (x[i] < r.min) r.min = x[i];
        if (x[i] > r.max) r.max = x[i];
    }
    return r;
}

double msd_avx2(const double* a, const double* b, size_t n) {
    double m = -std::numeric_limits<double>::infinity();
    size_t i = 0;
    if (n >= 4) {
        __m256d vm = _mm256_set1_pd(m);
        for (; i + 4 <= n; i += 4) {
            __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
            vm = _mm256_max_pd(vm, d);
        }
        alignas(32) double t[4];
        _mm256_store_pd(t, vm);
        for (int k = 0; k < 4; ++k)
            if (t[k] > m) m = t[k];
    }
    for (; i < n; ++i) {
        double d = a[i] - b[i];
        if (d > m) m = d;
    }
    return m;
}

}  // namespace

const Impl& avx2_impl() {
    static const Impl impl{"avx2",      sum_avx2,    dot_avx2, wds_avx2,
                           axpy_avx2,   minmax_avx2, msd_avx2};
    return impl;
}

bool cpu_has_avx2_fma() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

}  // namespace nmpl::kernels::detail

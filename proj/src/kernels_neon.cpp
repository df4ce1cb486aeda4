#include <arm_neon.h>

#include <limits>

#include "kernels_impl.hpp"

// NEON variants (aarch64, 2 lanes of f64).

namespace nmpl::kernels::detail {
namespace {

double sum_neon(const double* x, size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += x[i];
    return s;
}

double dot_neon(const double* x, const double* y, size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double wds_neon(const double* vals, const double* w, double u0, size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    float64x2_t vu0 = vdupq_n_f64(u0);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t d = vsubq_f64(vld1q_f64(vals + i), vu0);
        acc = vfmaq_f64(acc, vld1q_f64(w + i), d);
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += w[i] * (vals[i] - u0);
    return s;
}

void axpy_neon(double a, const double* x, double* y, size_t n) {
    float64x2_t va = vdupq_n_f64(a);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vy = vld1q_f64(y + i);
        vy = vfmaq_f64(vy, va, vld1q_f64(x + i));
        vst1q_f64(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

MinMax minmax_neon(const double* x, size_t n) {
    MinMax r{std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};
    size_t i = 0;
    if (n >= 2) {
        float64x2_t vmin = vld1q_f64(x);
        float64x2_t vmax = vmin;
        for (i = 2; i + 2 <= n; i += 2) {
            float64x2_t v = vld1q_f64(x + i);
            vmin = vminq_f64(vmin, v);
            vmax = vmaxq_f64(vmax, v);
        }
        r.min = vminvq_f64(vmin);
        r.max = vmaxvq_f64(vmax);
    }
    for (; i < n; ++i) {
        if (x[i] < r.min) r.min = x[i];
        if (x[i] > r.max) r.max = x[i];
    }
    return r;
}

double msd_neon(const double* a, const double* b, size_t n) {
    double m = -std::numeric_limits<double>::infinity();
    size_t i = 0;
    if (n >= 2) {
        float64x2_t vm = vdupq_n_f64(m);
        for (; i + 2 <= n; i += 2)
            vm = vmaxq_f64(vm, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        m = vmaxvq_f64(vm);
    }
    for (; i < n; ++i) {
        double d = a[i] - b[i];
        if (d > m) m = d;
    }
    return m;
}

}  // namespace

const Impl& neon_impl() {
    static const Impl impl{"neon",      sum_neon,    dot_neon, wds_neon,
                           axpy_neon,   minmax_neon, msd_neon};
    return impl;
}

}  // namespace nmpl::kernels::detail

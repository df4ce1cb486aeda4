#include <limits>

#include "kernels_impl.hpp"

// Reference kernels. Plain loops, no pairwise tricks: these define the
// semantics the SIMD variants are tested against.

namespace nmpl::kernels::detail {
namespace {

double sum_scalar(const double* x, size_t n) {
    double s = 0;
    for (size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

double dot_scalar(const double* x, const double* y, size_t n) {
    double s = 0;
    for (size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double wds_scalar(const double* vals, const double* w, double u0, size_t n) {
    double s = 0;
    for (size_t i = 0; i < n; ++i) s += w[i] * (vals[i] - u0);
    return s;
}

void axpy_scalar(double a, const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

MinMax minmax_scalar(const double* x, size_t n) {
    MinMax r{std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};
    for (size_t i = 0; i < n; ++i) {
        if (x[i] < r.min) r.min = x[i];
        if (x[i] > r.max) r.max = x[i];
    }
    return r;
}

double msd_scalar(const double* a, const double* b, size_t n) {
    double m = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i) {
        double d = a[i] - b[i];
        if (d > m) m = d;
    }
    return m;
}

}  // namespace

const Impl& scalar_impl() {
    static const Impl impl{"scalar",      sum_scalar,    dot_scalar, wds_scalar,
                           axpy_scalar,   minmax_scalar, msd_scalar};
    return impl;
}

}  // namespace nmpl::kernels::detail

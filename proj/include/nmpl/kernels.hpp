#pragma once

#include <cstddef>

// Data-parallel f64 primitives used by the quadrature accumulators and the
// grid stepper. Every primitive has a scalar reference implementation and,
// where the platform provides them, an AVX2/FMA or NEON variant. The variant
// is picked once at startup from CPU features; NMPL_SIMD=scalar in the
// environment (or force_scalar(true)) pins the reference path.
//
// SIMD variants reassociate additions, so results may differ from the scalar
// reference by rounding; the equivalence tests bound that difference.

namespace nmpl::kernels {

struct MinMax {
    double min;
    double max;
};

// Name of the active instruction set: "scalar", "avx2", "neon".
const char* active_isa();

// Pin or unpin the scalar reference path (tests use this).
void force_scalar(bool on);

double sum(const double* x, size_t n);
double dot(const double* x, const double* y, size_t n);

// sum_i w[i] * (vals[i] - u0) — the compensated-difference accumulation.
double weighted_diff_sum(const double* vals, const double* w, double u0, size_t n);

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, size_t n);

MinMax minmax(const double* x, size_t n);

// max_i (a[i] - b[i]); n must be > 0.
double max_signed_diff(const double* a, const double* b, size_t n);

}  // namespace nmpl::kernels

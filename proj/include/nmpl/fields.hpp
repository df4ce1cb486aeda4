#pragma once

#include <array>
#include <functional>
#include <vector>

#include "nmpl/common.hpp"

namespace nmpl {

enum class BoundaryMode { Periodic, Dirichlet };

// Uniform node grid on a box. Periodic grids place n nodes on [lo, hi) with
// spacing (hi-lo)/n; Dirichlet grids include both endpoints with spacing
// (hi-lo)/(n-1).
struct GridGeom {
    int dim = 1;
    std::array<double, kMaxDim> lo{};
    std::array<double, kMaxDim> hi{};
    std::array<int, kMaxDim> n{};
    BoundaryMode mode = BoundaryMode::Periodic;

    double h(int d) const {
        return (hi[d] - lo[d]) / (mode == BoundaryMode::Periodic ? n[d] : n[d] - 1);
    }
    int64_t count() const {
        int64_t c = 1;
        for (int d = 0; d < dim; ++d) c *= n[d];
        return c;
    }
    int64_t index(const std::array<int, kMaxDim>& idx) const {
        int64_t i = 0;
        for (int d = 0; d < dim; ++d) i = i * n[d] + idx[d];
        return i;
    }
    std::array<int, kMaxDim> coords(int64_t i) const {
        std::array<int, kMaxDim> idx{};
        for (int d = dim - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(i % n[d]);
            i /= n[d];
        }
        return idx;
    }
    Vec point(const std::array<int, kMaxDim>& idx) const {
        Vec x(dim);
        for (int d = 0; d < dim; ++d) x[d] = lo[d] + idx[d] * h(d);
        return x;
    }
    Vec point(int64_t i) const { return point(coords(i)); }
};

// Space-time grid function with a prescribed exterior: Dirichlet data phi(x,t)
// outside the box, or periodic wrap. Every nonlocal quadrature point is
// therefore defined.
struct GridField {
    GridGeom g;
    std::vector<double> u;
    std::function<double(const Vec&, double)> exterior;

    void allocate() { u.assign(g.count(), 0.0); }
    double& at(const std::array<int, kMaxDim>& idx) { return u[g.index(idx)]; }
    double at(const std::array<int, kMaxDim>& idx) const { return u[g.index(idx)]; }

    // Multilinear interpolation; wraps (periodic) or falls back to the
    // exterior function (Dirichlet).
    double value_at(const Vec& x, double t) const;
};

// C^2 space-time function handed to the nonlocal evaluators. gradient/hessian
// may be empty (finite differences are used); delta, when present, computes
// u(x+z,t)-u(x,t) without cancellation.
struct SpaceTimeFn {
    std::function<double(const Vec&, double)> value;
    std::function<Vec(const Vec&, double)> gradient;
    std::function<SymMat(const Vec&, double)> hessian;
    std::function<double(const Vec&, const Vec&, double)> delta;

    Vec grad_or_fd(const Vec& x, double t, double step) const;
    SymMat hess_or_fd(const Vec& x, double t, double step) const;
    double diff(const Vec& x, const Vec& z, double t) const {
        if (delta) return delta(x, z, t);
        Vec y = x;
        y += z;
        return value(y, t) - value(x, t);
    }
};

SpaceTimeFn field_fn(const GridField& f);

}  // namespace nmpl

#include "nmpl/fields.hpp"

#include <cmath>

namespace nmpl {

double GridField::value_at(const Vec& x, double t) const {
    std::array<int, kMaxDim> i0{};
    std::array<double, kMaxDim> th{};
    if (g.mode == BoundaryMode::Dirichlet) {
        for (int d = 0; d < g.dim; ++d)
            if (x[d] < g.lo[d] || x[d] > g.hi[d]) {
                if (!exterior)
                    throw PreconditionError("GridField: exterior data required outside the box");
                return exterior(x, t);
            }
        for (int d = 0; d < g.dim; ++d) {
            double s = (x[d] - g.lo[d]) / g.h(d);
            int i = std::min(static_cast<int>(std::floor(s)), g.n[d] - 2);
            i = std::max(i, 0);
            i0[d] = i;
            th[d] = s - i;
        }
    } else {
        for (int d = 0; d < g.dim; ++d) {
            double L = g.hi[d] - g.lo[d];
            double y = std::fmod(x[d] - g.lo[d], L);
            if (y < 0) y += L;
            double s = y / g.h(d);
            int i = static_cast<int>(std::floor(s));
            if (i >= g.n[d]) i = g.n[d] - 1;
            i0[d] = i;
            th[d] = s - i;
        }
    }
    // multilinear over 2^dim corners
    double acc = 0;
    int corners = 1 << g.dim;
    for (int c = 0; c < corners; ++c) {
        double w = 1;
        std::array<int, kMaxDim> idx{};
        for (int d = 0; d < g.dim; ++d) {
            if (c & (1 << d)) {
                w *= th[d];
                idx[d] = i0[d] + 1;
                if (g.mode == BoundaryMode::Periodic && idx[d] >= g.n[d]) idx[d] -= g.n[d];
            } else {
                w *= 1.0 - th[d];
                idx[d] = i0[d];
            }
        }
        if (w != 0) acc += w * u[g.index(idx)];
    }
    return acc;
}

Vec SpaceTimeFn::grad_or_fd(const Vec& x, double t, double step) const {
    if (gradient) return gradient(x, t);
    Vec g(x.dim());
    for (int d = 0; d < x.dim(); ++d) {
        Vec zp = Vec::zero(x.dim()), zm = Vec::zero(x.dim());
        zp[d] = step;
        zm[d] = -step;
        g[d] = (diff(x, zp, t) - diff(x, zm, t)) / (2.0 * step);
    }
    return g;
}

SymMat SpaceTimeFn::hess_or_fd(const Vec& x, double t, double step) const {
    if (hessian) return hessian(x, t);
    const int n = x.dim();
    SymMat h(n);
    for (int d = 0; d < n; ++d) {
        Vec zp = Vec::zero(n), zm = Vec::zero(n);
        zp[d] = step;
        zm[d] = -step;
        h(d, d) = (diff(x, zp, t) + diff(x, zm, t)) / (step * step);
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            Vec zpp = Vec::zero(n), zpm = Vec::zero(n), zmp = Vec::zero(n), zmm = Vec::zero(n);
            zpp[a] = step, zpp[b] = step;
            zpm[a] = step, zpm[b] = -step;
            zmp[a] = -step, zmp[b] = step;
            zmm[a] = -step, zmm[b] = -step;
            double v = (diff(x, zpp, t) - diff(x, zpm, t) - diff(x, zmp, t) + diff(x, zmm, t)) /
                       (4.0 * step * step);
            h(a, b) = h(b, a) = v;
        }
    return h;
}

SpaceTimeFn field_fn(const GridField& f) {
    SpaceTimeFn fn;
    const GridField* fp = &f;
    fn.value = [fp](const Vec& x, double t) { return fp->value_at(x, t); };
    double step = 1e300;
    for (int d = 0; d < f.g.dim; ++d) step = std::min(step, f.g.h(d));
    fn.gradient = [fp, step](const Vec& x, double t) {
        SpaceTimeFn v;
        v.value = [fp](const Vec& y, double s) { return fp->value_at(y, s); };
        return v.grad_or_fd(x, t, step);
    };
    fn.hessian = [fp, step](const Vec& x, double t) {
        SpaceTimeFn v;
        v.value = [fp](const Vec& y, double s) { return fp->value_at(y, s); };
        return v.hess_or_fd(x, t, step);
    };
    return fn;
}

}  // namespace nmpl

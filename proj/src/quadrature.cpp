#include "nmpl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace nmpl {

namespace {

GaussRule compute_gauss_legendre(int n) {
    // Newton iteration on Legendre polynomials, symmetric nodes.
    GaussRule g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        g.x[i] = -x;
        g.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        g.w[i] = w;
        g.w[n - 1 - i] = w;
    }
    return g;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

std::vector<double> geometric_breakpoints(double lo, double hi, int per_decade) {
    std::vector<double> b;
    if (!(lo > 0) || !(hi > lo)) {
        b = {lo, hi};
        return b;
    }
    double decades = std::log10(hi / lo);
    int n = std::max(1, static_cast<int>(std::ceil(decades * per_decade)));
    b.resize(n + 1);
    double step = decades / n;
    for (int i = 0; i <= n; ++i) b[i] = lo * std::pow(10.0, step * i);
    b.front() = lo;
    b.back() = hi;
    return b;
}

double radial_power_moment(double a, double b, double s, double beta) {
    double e = s - beta;  // exponent + 1 of the antiderivative
    if (std::abs(e) < 1e-14) return std::log(b / a);
    if (a <= 0) {
        if (e <= 0) return std::numeric_limits<double>::infinity();
        return std::pow(b, e) / e;
    }
    return (std::pow(b, e) - std::pow(a, e)) / e;
}

int RadialGrid::split_index(double x) const {
    return static_cast<int>(std::lower_bound(r.begin(), r.end(), x) - r.begin());
}

RadialGrid make_radial_grid(double lo, double hi, double beta, int per_decade,
                            int gauss_points, const std::vector<double>& forced_breaks) {
    RadialGrid grid;
    grid.lo = lo;
    grid.hi = hi;
    grid.beta = beta;
    if (!(hi > lo) || !(lo > 0)) return grid;

    std::vector<double> pts{lo, hi};
    for (double b : forced_breaks)
        if (b > lo && b < hi) pts.push_back(b);
    std::sort(pts.begin(), pts.end());

    const GaussRule& g = gauss_legendre(gauss_points);
    for (size_t seg = 0; seg + 1 < pts.size(); ++seg) {
        auto breaks = geometric_breakpoints(pts[seg], pts[seg + 1], per_decade);
        for (size_t i = 0; i + 1 < breaks.size(); ++i) {
            double a = breaks[i], b = breaks[i + 1];
            double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (int k = 0; k < gauss_points; ++k) {
                double r = mid + half * g.x[k];
                double w = half * g.w[k] * std::pow(r, -(1.0 + beta));
                grid.r.push_back(r);
                grid.w.push_back(w);
                if (r < 1.0) grid.comp_r += w * r;
            }
        }
    }
    return grid;
}

}  // namespace nmpl

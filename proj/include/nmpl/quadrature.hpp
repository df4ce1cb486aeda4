#pragma once

#include <vector>

#include "nmpl/common.hpp"

namespace nmpl {

// Resolution knobs for the singular-kernel quadrature. Radial integration
// uses geometric shells accumulating toward the origin with a Gauss rule per
// shell; below inner_radius the r^2-moment of the kernel is taken in closed
// form. Beyond the tail radius the remainder is handled analytically for the
// power-law kernels.
struct QuadratureConfig {
    int shells_per_decade = 8;
    int gauss_points = 6;
    int angular_points = 64;   // directions on the circle (2-d); 1-d always uses {+1,-1}
    double inner_radius = 1e-6;
    double tail_radius = -1;   // <= 0: use the measure's truncation radius
    double tolerance = 1e-6;
    bool estimate_error = true;

    QuadratureConfig refined() const {
        QuadratureConfig q = *this;
        q.shells_per_decade *= 2;
        q.gauss_points += 2;
        q.angular_points *= 2;
        q.inner_radius *= 0.25;
        return q;
    }
};

struct GaussRule {
    std::vector<double> x;  // nodes on [-1,1]
    std::vector<double> w;
};

// Gauss-Legendre rule, cached per n.
const GaussRule& gauss_legendre(int n);

// Geometric breakpoints lo = b0 < b1 < ... = hi.
std::vector<double> geometric_breakpoints(double lo, double hi, int per_decade);

// ∫_a^b r^s · r^{-(1+beta)} dr  (the radial measure of every kernel here is
// r^{-(1+beta)} dr after absorbing the surface Jacobian).
double radial_power_moment(double a, double b, double s, double beta);

// 1-d radial grid on [lo, hi]: Gauss nodes per geometric shell with weights
// that already include the radial measure r^{-(1+beta)}.
struct RadialGrid {
    std::vector<double> r;
    std::vector<double> w;
    double lo = 0, hi = 0, beta = 0;
    // Σ w_k r_k over nodes with r_k < 1 (gradient-compensation integral).
    double comp_r = 0;
    // index of first node with r >= x (nodes are sorted).
    int split_index(double x) const;
};
RadialGrid make_radial_grid(double lo, double hi, double beta, int per_decade,
                            int gauss_points, const std::vector<double>& forced_breaks = {});

}  // namespace nmpl

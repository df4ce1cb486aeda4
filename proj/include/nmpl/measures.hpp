#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nmpl/common.hpp"
#include "nmpl/quadrature.hpp"

namespace nmpl {

// x-dependent jump displacement for Lévy–Itô operators and push-forwards.
struct JumpMap {
    std::function<Vec(const Vec& x, const Vec& z)> map;
    double c0 = 1.0;  // |j(x,z)| <= c0 |z|, |j(x,z)-j(y,z)| <= c0 |z| |x-y|
};

enum class MeasureKind {
    RadialStable,          // dz / |z|^{N+beta}
    HalfSpaceStable,       // 1_{z_axis >= 0} dz / |z|^{N+beta}
    ConeRestricted,        // 1_{|z_a| > alpha |z_b|} * base
    AxisCharging,          // two lines z_a = ±alpha z_b, 1-d density |s|^{-(1+beta)}
    ZeroOrderDirectional,  // g(z/|z|) dz / |z|^{N+1}
    PushForward,           // image of base under z -> j(x,z)
};

struct MeasureSpec {
    MeasureKind kind = MeasureKind::RadialStable;
    int dim = 1;
    double beta = 1.5;
    int axis = 0;            // half-space support axis
    double alpha = 1.0;      // cone aperture / axis slope
    int axis_pair[2] = {0, 1};
    std::function<double(const Vec&)> angular_density;  // ZeroOrderDirectional g
    std::shared_ptr<const MeasureSpec> base;
    std::shared_ptr<const JumpMap> jump;
    double truncation_radius = 1e3;

    static MeasureSpec radial_stable(double beta, int dim);
    static MeasureSpec half_space_stable(double beta, int dim, int axis = 0);
    static MeasureSpec cone_restricted(MeasureSpec base, double alpha, int a0 = 0, int a1 = 1);
    static MeasureSpec axis_charging(double alpha, double beta, int dim = 2, int a0 = 0,
                                     int a1 = 1);
    static MeasureSpec zero_order_directional(std::function<double(const Vec&)> g, int dim);
    static MeasureSpec push_forward(MeasureSpec base, JumpMap j);

    bool is_push_forward() const { return kind == MeasureKind::PushForward; }
    // Measure whose kernel is actually integrated (base for push-forwards).
    const MeasureSpec& carrier() const { return is_push_forward() ? *base : *this; }
    // Radial singularity order of the carrier kernel.
    double radial_beta() const;
    // Support is a null set of the ambient space (line-charging kinds).
    bool lower_dimensional_support() const;
    bool symmetric() const;  // invariance under z -> -z (best effort for g)

    // Radon–Nikodym density: throws PreconditionError at z = 0 and
    // NumericalError for PushForward. AxisCharging returns the 1-d density
    // along the charged line (0 off the lines).
    double density(const Vec& z) const;
    bool support_contains(const Vec& z) const;
    // Support intersects the axis-aligned box [lo, hi]; exact for half-space
    // and line supports, corner/center sampled for cones.
    bool support_intersects_box(const Vec& lo, const Vec& hi) const;
};

// --- quadrature node sets -------------------------------------------------

struct AngularDecomp {
    int dim = 1;
    std::vector<Vec> omega;     // unit directions
    std::vector<double> w;      // angular weights (density folded in)
    bool symmetric_pairs = false;  // omega[k + D/2] == -omega[k]
    double total_weight() const;
};
// Directions/weights of the carrier's angular factor. angular_points applies
// in 2-d; 1-d uses {+1,-1}; AxisCharging uses its four oriented lines.
AngularDecomp angular_decomposition(const MeasureSpec& m, int angular_points);

// Product node set: per-direction shared radial grid. Weight of node (d,k)
// is ang.w[d] * rad.w[k]; coordinates r[k] * omega[d].
struct NodeSet {
    AngularDecomp ang;
    RadialGrid rad;
    double beta = 1.5;
    double tail_radius = 0;
    double tail_mass = 0;  // closed-form ∫_{|z|>tail} of the carrier
    std::shared_ptr<const JumpMap> jump;  // set for push-forwards
    size_t count() const { return ang.omega.size() * rad.r.size(); }
};
NodeSet build_nodes(const MeasureSpec& m, const QuadratureConfig& q, double r_lo,
                    double r_hi, const std::vector<double>& forced_breaks = {});
double resolve_tail_radius(const MeasureSpec& m, const QuadratureConfig& q);

// --- operations -----------------------------------------------------------

struct MeasureBound {
    double second_moment = 0;  // ∫_B |z|^2 μ (paired moment for zero-order kinds)
    double tail_mass = 0;      // ∫_{B^c} μ
    double total = 0;          // C̃_μ estimate
    double error_bound = 0;
    bool m_applicable = true;  // false for ZeroOrderDirectional
    bool pass = false;
};
MeasureBound measure_bound(const MeasureSpec& m, const QuadratureConfig& q);
// Lévy–Itô form: ∫_B |j(x,z)|^2 μ + ∫_{B^c} μ at a given x.
MeasureBound measure_bound_levy_ito(const MeasureSpec& base, const JumpMap& j, const Vec& x,
                                    const QuadratureConfig& q);

struct ConeSpec {
    Vec p;
    double eta = 0.5;
    double gamma = 1.0;
};
// (1-η)|z||p| <= |p·z| <= 1/γ
bool cone_contains(const ConeSpec& c, const Vec& z);

enum class ConeWeight { ProjSquared, NormSquared };

struct ConeMass {
    double value = 0;
    double error_bound = 0;
    bool empty = false;  // support misses the cone entirely
};
// ∫_{C_{η,γ}(p)} w(z) μ(dz); for push-forwards the weight and membership are
// evaluated on j(x,z) (x = origin unless given).
ConeMass cone_weighted_mass(const MeasureSpec& m, const ConeSpec& c, ConeWeight w,
                            const QuadratureConfig& q, const Vec* x_for_jump = nullptr);

struct ConeScalingFit {
    double slope = 0;      // fitted exponent of γ
    double intercept = 0;  // log of the fitted constant
    double constant = 0;   // e^{intercept}
    std::vector<double> gammas;
    std::vector<double> masses;
};
// Least-squares fit of log(∫_{C_{η,γ}} |z|² μ) against log γ on a geometric
// grid; throws NumericalError on vanishing cone mass (degenerate fit).
ConeScalingFit mc_scaling_probe(const MeasureSpec& m, const Vec& p, double eta,
                                double gamma_lo, double gamma_hi, int count,
                                const QuadratureConfig& q);

}  // namespace nmpl

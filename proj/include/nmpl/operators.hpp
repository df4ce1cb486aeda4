#pragma once

#include <optional>

#include "nmpl/fields.hpp"
#include "nmpl/measures.hpp"

namespace nmpl {

struct NonlocalConfig {
    double delta = 0.5;  // split radius, 0 < delta < 1
    QuadratureConfig quad;
};

struct NonlocalValue {
    double i1 = 0;     // near part, |z| <= delta, second-order compensated
    double i2 = 0;     // far part, |z| > delta, gradient compensation on B only
    double total = 0;  // i1 + i2
    double error = 0;  // certified bound: refinement + tail + inner remainders
};

// I[x,t,u] = ∫ (u(x+z,t) - u(x,t) - Du(x,t)·z 1_B(z)) μ(dz), reported as the
// delta-split pair. Throws NumericalError when the sampled growth of u beats
// the kernel tail. Error bounds are certified for C² inputs; grid
// interpolants are only meaningful down to their cell scale.
NonlocalValue eval_compensated(const SpaceTimeFn& u, const Vec& x, double t,
                               const MeasureSpec& m, const NonlocalConfig& cfg);

// Lévy–Itô form: displacements j(x,z), compensation Du·j(x,z) on |z| <= 1.
NonlocalValue eval_levy_ito(const SpaceTimeFn& u, const Vec& x, double t,
                            const MeasureSpec& base, const JumpMap& j,
                            const NonlocalConfig& cfg);

// Uncompensated zero-order operator M[u] against a ZeroOrderDirectional
// measure (symmetric pairs are accumulated jointly, i.e. a principal value).
double eval_zero_order(const SpaceTimeFn& u, const Vec& x, double t, const MeasureSpec& m,
                       const NonlocalConfig& cfg);

struct PucciParams {
    double lambda = 0.0;
    double Lambda = 1.0;
};
// M^+(X) = Lambda * sum of positive eigenvalues + lambda * sum of negative.
double pucci_plus(const SymMat& x, const PucciParams& p);

enum class FForm {
    PureNonlocal,       // u_t - I = 0
    GrowingInterface,   // u_t + |Du|^2/2 - I = 0
    GradientPower,      // u_t + b(x,t)|Du|^m - I = 0
    Quasilinear,        // u_t - tr(A(x,t) D^2 u) - I = 0
    MixedLocalNonlocal, // u_t - I_{x1} - Δ_{x2} = 0
    MixedWeighted,      // u_t - a(x) I_{x1} - c(x) Δ_{x2} = 0
    Dislocation,        // u_t - (c(x) + M[u]) |Du| = 0
    LinearizedComparison  // w_t - c|Dw| - M^+(D^2 w) - c J[w] = 0
};

struct NonlinearitySpec {
    FForm form = FForm::PureNonlocal;
    double m_exponent = 2.0;  // GradientPower
    std::function<double(const Vec&, double)> b;       // GradientPower coefficient
    std::function<double(const Vec&, double)> c_fn;    // Dislocation speed
    std::function<SymMat(const Vec&, double)> A;       // Quasilinear diffusion
    std::function<double(const Vec&, double)> a_coef;  // MixedWeighted a(x)
    std::function<double(const Vec&, double)> c_coef;  // MixedWeighted c(x)
    int split_dim = 1;    // leading nonlocal block size for mixed forms
    double lin_c = 1.0;   // LinearizedComparison constant c
    PucciParams pucci;
};

// F(x,t,p,X,l); for mixed forms l is the directional nonlocal value and the
// x2-block Laplacian is read off X.
double eval_F(const NonlinearitySpec& f, const Vec& x, double t, const Vec& p,
              const SymMat& X, double l);

struct EllipticityViolation {
    Vec x;
    double t;
    Vec p;
    double f_higher, f_lower;  // F at (X,l1) vs (Y,l2), X>=Y, l1>=l2
};
struct EllipticityReport {
    int samples = 0;
    std::vector<EllipticityViolation> violations;
    bool e_prime_holds = true;  // F(x,t,0,O,l) <= 0 implies l >= 0
};
EllipticityReport ellipticity_probe(const NonlinearitySpec& f, int dim, int samples, Rng& rng);

}  // namespace nmpl

#pragma once

#include "nmpl/barriers.hpp"
#include "nmpl/scheme.hpp"

namespace nmpl {

struct TimeSliceReport {
    int step = 0;
    double t = 0;
    double max_value = 0;
    std::vector<int64_t> max_cells;       // cells within tol of the slice max
    std::vector<int64_t> argmax_component;  // connected component of an argmax
                                            // inside the max-attaining set
    bool horizontal_constant = false;  // whole grid component within tol of max
};

struct PropagationReport {
    std::vector<TimeSliceReport> slices;
    bool vertical_persistence = false;  // every t < t* attains the global max
    double global_max = 0;
    int t_star_step = 0;  // last step attaining the global max (within tol)
    double tolerance = 0;
};
PropagationReport propagation_test(const Trajectory& traj, double tol);

struct NondegeneracyReport {
    bool diverges = false;
    double exponent = 0;   // growth exponent fitted on consecutive increments
    double first_decade_min = 0;
    double last_decade_min = 0;
    std::vector<double> gammas;
    std::vector<double> values;  // min over samples of the nondegeneracy expression
};
// Evaluates F(x,t,p, I-γp⊗p, C̃_μ - cγ∫_{C_{η,γ}(p)}|p·z|²μ) over a geometric
// γ grid; the minimum over sampled (x,t,p) with R/2 <= |p| <= R is recorded
// per γ. For mixed forms the cone integral runs over the leading block.
NondegeneracyReport nondegeneracy_probe(const NonlinearitySpec& f, const MeasureSpec& m,
                                        const Vec& xbar, double t0, double R, double eta,
                                        double c, double gamma_lo, double gamma_hi,
                                        int gamma_count, int samples, Rng& rng,
                                        const QuadratureConfig& q);

struct VerticalNondegeneracyResult {
    bool any_pass = false;
    bool all_pass = false;
    double lambda_min = 0;  // smallest grid λ with λ + F(x0,t0,0,I,C̃) > 0
    std::vector<double> lambdas;
    std::vector<double> values;
};
VerticalNondegeneracyResult vertical_nondegeneracy_check(const NonlinearitySpec& f,
                                                         const MeasureSpec& m, const Vec& x0,
                                                         double t0,
                                                         const std::vector<double>& lambda_grid,
                                                         const QuadratureConfig& q);

struct ScalingCheckReport {
    double worst_s = 0;        // min over samples of F(εp,ε(I-γp⊗p),εl) - εF(p,I-γp⊗p,l)
    double worst_s_prime = 0;  // same with X = I and l <= C̃
    bool s_holds = false;
    bool s_prime_holds = false;
    // gradient-power regime from the coefficient sign and exponent:
    // m >= 1 passes; m < 1 passes when b >= 0
    bool regime_pass = true;
};
ScalingCheckReport scaling_check(const NonlinearitySpec& f, int dim, int samples,
                                 const std::vector<double>& eps_grid, double ctilde, Rng& rng);

}  // namespace nmpl

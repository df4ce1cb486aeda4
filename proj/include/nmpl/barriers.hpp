#pragma once

#include <optional>
#include <vector>

#include "nmpl/operators.hpp"

namespace nmpl {

// v(x,t) = e^{-γR²} - e^{-γ d(x,t)}, d = |x-x̄|² + λ|t-t₀|²; zero on the
// ellipsoid boundary {d = R²}, negative inside.
struct HorizontalBarrier {
    Vec xbar;
    double t0 = 0;
    double R = 1;
    double lambda = 1;
    double gamma = 16;

    double d(const Vec& x, double t) const {
        Vec dx = x;
        dx -= xbar;
        return norm2(dx) + lambda * (t - t0) * (t - t0);
    }
    bool in_ellipsoid(const Vec& x, double t) const { return d(x, t) < R * R; }
    bool in_DR(const Vec& x, double t) const {
        Vec dx = x;
        dx -= xbar;
        return in_ellipsoid(x, t) && norm(dx) > 0.5 * R;
    }
};

// v(x,t) = 1 - e^{-h(x,t)}, h = |x-x₀|²/2 + λ(t-t₀).
struct VerticalBarrier {
    Vec x0;
    double t0 = 0;
    double lambda = 1;

    double h(const Vec& x, double t) const {
        Vec dx = x;
        dx -= x0;
        return 0.5 * norm2(dx) + lambda * (t - t0);
    }
};

struct BarrierJet {
    double v = 0;
    double vt = 0;
    Vec dv;
    SymMat d2v;
};
BarrierJet horizontal_barrier_eval(const HorizontalBarrier& b, const Vec& x, double t);
BarrierJet vertical_barrier_eval(const VerticalBarrier& b, const Vec& x, double t);

// Proof thresholds.
inline double gamma0_threshold(double R, double eta) {
    return 4.0 / (R * R * (1.0 - eta) * (1.0 - eta));
}
inline double delta_bar(double R, double eta) { return 2.0 + 2.0 / ((1.0 - eta) * R); }
inline double exp_ineq_constant(double R, double eta) {
    return 0.5 * std::exp(-delta_bar(R, eta));
}

// Normalized nonlocal pieces of an exponential-of-quadratic barrier:
// for v = C - e^{-rate·d(x,t)} with d(x+z,t)-d(x,t) = q·z + s|z|²,
//   T^k[x,t,v] = e^{-rate·d(x,t)} · w_k,
// split as w1 (|z|>=1, no compensation), w2 (B \ cone), w3 (cone).
struct ExpQuadratic {
    Vec q;
    double s = 1;
    double rate = 1;
};
struct BarrierNonlocalParts {
    double w1 = 0, w2 = 0, w3 = 0;
    double err = 0;
    double total() const { return w1 + w2 + w3; }
};
// cone == nullptr puts the whole unit ball into w2. compensate == false drops
// the gradient term (zero-order operators; requires a symmetric measure).
BarrierNonlocalParts barrier_nonlocal_parts(const ExpQuadratic& e, const MeasureSpec& m,
                                            const ConeSpec* cone, const QuadratureConfig& q,
                                            bool compensate = true);

struct SampleMargin {
    Vec x;
    double t = 0;
    double lhs = 0;   // raw nonlocal value (or scaled operator value)
    double rhs = 0;   // raw bound
    double margin = 0;
    double margin_normalized = 0;  // divided by 2γ e^{-γd}
};
struct MarginReport {
    double min_margin = 0;
    double min_margin_normalized = 0;
    double tolerance = 0;  // certified normalized tolerance (worst sample)
    bool pass = false;     // min normalized margin >= -tolerance
    std::vector<SampleMargin> samples;
};

// Nonlocal estimate on the horizontal barrier over D_R: checks
// I[x,t,v] <= 2γ e^{-γd} { C̃_μ - cγ ∫_{C_{η,γ}(x-x̄)} |(x-x̄)·z|² μ }.
// Requires γ >= γ₀(R,η) and c <= (1/2)e^{-δ̄}. Explicit samples must lie in
// D_R; when absent, `nsamples` points are drawn.
MarginReport verify_nl_estimate(const HorizontalBarrier& b, const MeasureSpec& m, double eta,
                                double c, int nsamples, Rng& rng, const QuadratureConfig& q,
                                const std::vector<std::pair<Vec, double>>* samples = nullptr);

struct ComponentLemmaReport {
    MarginReport t1, t2, t3;
};
ComponentLemmaReport verify_component_lemmas(const HorizontalBarrier& b, const MeasureSpec& m,
                                             double eta, double c, int nsamples, Rng& rng,
                                             const QuadratureConfig& q);

struct ExpIneqReport {
    double scalar_min_margin = 0;      // min over y-grid of e^y-1-y-c y²
    double functional_min_margin = 0;  // min over sampled x of ∫_D (e^{Δφ}-1-Δφ-cΔφ²) μ
    double tolerance = 0;
    bool pass = false;
};
// c = (1/2)e^{-δ̄}; D = {z : φ(x+z)-φ(x) >= -δ̄}.
ExpIneqReport verify_exp_inequality(const SpaceTimeFn& phi, const MeasureSpec& m,
                                    double delta, int n_points, int n_ygrid, Rng& rng,
                                    const QuadratureConfig& q, double sample_halfwidth = 1.0);

struct SupersolutionReport {
    double min_value = 0;       // min over samples of the (scaled) operator value
    double min_normalized = 0;  // divided by 2γ ε e^{-γd} (horizontal)
    std::vector<SampleMargin> samples;
};
// Evaluates ε v_t + F(x,t,ε Dv, ε D²v, ε I[x,t,v]) over D_R samples.
SupersolutionReport strict_supersolution_margin(const NonlinearitySpec& f,
                                                const HorizontalBarrier& b,
                                                const MeasureSpec& m, double eps, int nsamples,
                                                Rng& rng, const QuadratureConfig& q);
// Vertical variant over S = B((x₀,t₀),r) ∩ {v < 0}.
SupersolutionReport strict_supersolution_margin_vertical(const NonlinearitySpec& f,
                                                         const VerticalBarrier& b,
                                                         const MeasureSpec& m, double radius,
                                                         double eps, int nsamples, Rng& rng,
                                                         const QuadratureConfig& q);

// Draw a point of D_R (first few are structured, rest random).
std::pair<Vec, double> sample_DR(const HorizontalBarrier& b, int index, Rng& rng);

}  // namespace nmpl

#pragma once

#include <memory>
#include <optional>
#include <string>

#include "nmpl/operators.hpp"

namespace nmpl {

struct SchemeConfig {
    GridField field;  // initial state, geometry, boundary
    NonlinearitySpec f;
    std::optional<MeasureSpec> m;  // absent: nonlocal argument is 0
    NonlocalConfig nlcfg;
    std::optional<JumpMap> jump;  // LinearizedComparison displacement (default identity)
    double dt = -1;               // <= 0: use the stability bound
    double t_end = 0.1;
    int snapshot_stride = 10;
    bool check_instability = true;
    double instability_tol = 1e-8;
};

struct StabilityInfo {
    double dt = 0;
    bool horizon_limited = false;  // no finite bound; dt set to t_end
    double nonlocal_bound = 0, second_order_bound = 0, gradient_bound = 0;  // inf if inactive
};

struct StepStats {
    int step = 0;
    double t = 0, umax = 0, umin = 0;
    int64_t argmax = 0;
};
struct Snapshot {
    int step = 0;
    double t = 0;
    std::vector<double> u;
};
struct Trajectory {
    GridGeom geom;
    std::vector<StepStats> stats;   // one per time level, level 0 included
    std::vector<Snapshot> snaps;    // thinned by snapshot_stride (0 and last kept)
};

// Monotone explicit update u ← u - dt·F(x,t,D_h u,D²_h u,I_h[u]): upwind
// gradients, centered second differences, stencil or per-cell quadrature for
// the nonlocal term (sub-grid kernel mass folded into a second difference).
class PreparedScheme {
  public:
    explicit PreparedScheme(const SchemeConfig& cfg);
    ~PreparedScheme();
    PreparedScheme(PreparedScheme&&) noexcept;

    void apply_step(std::vector<double>& u, double t, double dt) const;
    // largest monotone step (0.9 safety folded in by stability_dt, not here)
    double monotonicity_bound() const;
    double nonlocal_mass() const;
    double second_order_coefficient() const;
    double gradient_coefficient() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

StabilityInfo stability_dt(const SchemeConfig& cfg);

// One explicit step (convenience; prepares the discretization each call).
std::vector<double> step(const std::vector<double>& u, double t, const SchemeConfig& cfg);

Trajectory simulate(const SchemeConfig& cfg);

struct ComparisonReport {
    double initial_max_diff = 0;    // max_i (u0 - v0)
    double max_diff_over_steps = 0; // max_n max_i (u^n - v^n)
    double max_step_increase = 0;   // max_n [maxdiff_n - maxdiff_{n-1}]
    bool pass = false;
};
// Trajectories must carry per-step snapshots (snapshot_stride == 1).
ComparisonReport discrete_comparison_check(const Trajectory& u, const Trajectory& v,
                                           double tol = 1e-12);

}  // namespace nmpl

#include "nmpl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace nmpl {

namespace {

// connected component (2*dim neighbors, periodic wrap where applicable) of
// `seed` inside the set marked by `member`
std::vector<int64_t> grid_component(const GridGeom& g, int64_t seed,
                                    const std::vector<uint8_t>& member) {
    std::vector<int64_t> comp;
    if (!member[seed]) return comp;
    std::vector<uint8_t> seen(member.size(), 0);
    std::deque<int64_t> queue{seed};
    seen[seed] = 1;
    while (!queue.empty()) {
        int64_t ci = queue.front();
        queue.pop_front();
        comp.push_back(ci);
        auto c = g.coords(ci);
        for (int d = 0; d < g.dim; ++d) {
            for (int off : {-1, +1}) {
                auto cc = c;
                cc[d] += off;
                if (g.mode == BoundaryMode::Periodic) {
                    if (cc[d] < 0) cc[d] += g.n[d];
                    if (cc[d] >= g.n[d]) cc[d] -= g.n[d];
                } else if (cc[d] < 0 || cc[d] >= g.n[d]) {
                    continue;
                }
                int64_t ni = g.index(cc);
                if (!seen[ni] && member[ni]) {
                    seen[ni] = 1;
                    queue.push_back(ni);
                }
            }
        }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

}  // namespace

PropagationReport propagation_test(const Trajectory& traj, double tol) {
    if (traj.snaps.empty()) throw PreconditionError("propagation_test: empty trajectory");
    PropagationReport rep;
    rep.tolerance = tol;

    double global_max = -std::numeric_limits<double>::infinity();
    for (const auto& s : traj.snaps)
        for (double v : s.u) global_max = std::max(global_max, v);
    rep.global_max = global_max;

    const GridGeom& g = traj.geom;
    std::vector<uint8_t> all(g.count(), 1);
    for (const auto& snap : traj.snaps) {
        TimeSliceReport sl;
        sl.step = snap.step;
        sl.t = snap.t;
        double mx = -std::numeric_limits<double>::infinity();
        for (double v : snap.u) mx = std::max(mx, v);
        sl.max_value = mx;

        std::vector<uint8_t> member(snap.u.size(), 0);
        int64_t argmax = -1;
        for (size_t i = 0; i < snap.u.size(); ++i) {
            if (mx - snap.u[i] <= tol) {
                member[i] = 1;
                sl.max_cells.push_back(static_cast<int64_t>(i));
                if (argmax < 0 || snap.u[i] > snap.u[argmax]) argmax = static_cast<int64_t>(i);
            }
        }
        sl.argmax_component = grid_component(g, argmax, member);
        // component of the argmax within the (connected) grid: all cells
        std::vector<int64_t> domain_comp = grid_component(g, argmax, all);
        sl.horizontal_constant = true;
        for (int64_t ci : domain_comp)
            if (!member[ci]) {
                sl.horizontal_constant = false;
                break;
            }
        rep.slices.push_back(std::move(sl));
    }

    int t_star = 0;
    for (size_t k = 0; k < rep.slices.size(); ++k)
        if (rep.global_max - rep.slices[k].max_value <= tol) t_star = static_cast<int>(k);
    rep.t_star_step = rep.slices[t_star].step;
    rep.vertical_persistence = true;
    for (int k = 0; k < t_star; ++k)
        if (rep.global_max - rep.slices[k].max_value > tol) {
            rep.vertical_persistence = false;
            break;
        }
    return rep;
}

namespace {

// nondegeneracy expression F(x,t,p, I-γp⊗p, C̃-cγK) for one sample
double n_expression(const NonlinearitySpec& f, const MeasureSpec& m, const Vec& x, double t,
                    const Vec& p, double gamma, double eta, double c, double ctilde, int dim,
                    const QuadratureConfig& q) {
    SymMat X = SymMat::identity(dim);
    X -= gamma * SymMat::outer(p);
    // cone integral over the block the measure acts on
    int mdim = m.carrier().dim;
    Vec pb(mdim);
    for (int d = 0; d < mdim; ++d) pb[d] = p[d];
    double K = 0;
    if (norm(pb) > 1e-14) {
        ConeSpec cone{pb, eta, std::max(gamma, 1.0)};
        ConeMass cm = cone_weighted_mass(m, cone, ConeWeight::ProjSquared, q);
        K = cm.value;
    }
    double l = ctilde - c * gamma * K;
    return eval_F(f, x, t, p, X, l);
}

}  // namespace

NondegeneracyReport nondegeneracy_probe(const NonlinearitySpec& f, const MeasureSpec& m,
                                        const Vec& xbar, double t0, double R, double eta,
                                        double c, double gamma_lo, double gamma_hi,
                                        int gamma_count, int samples, Rng& rng,
                                        const QuadratureConfig& q) {
    if (gamma_count < 4) throw PreconditionError("nondegeneracy_probe: need >= 4 gammas");
    if (!(gamma_hi / gamma_lo >= 100.0))
        throw PreconditionError("nondegeneracy_probe: gamma grid must span >= 2 decades");
    const int dim = xbar.dim();
    MeasureBound mb = measure_bound(m, q);
    double ctilde = mb.total;

    // fixed sample set across the gamma grid: (x, t, p) with R/2 <= |p| <= R
    struct Sample {
        Vec x;
        double t;
        Vec p;
    };
    std::vector<Sample> pts;
    for (int s = 0; s < samples; ++s) {
        Sample smp;
        smp.x = xbar;
        for (int d = 0; d < dim; ++d) smp.x[d] += R * (2 * rng.uniform() - 1);
        smp.t = t0 + R * (2 * rng.uniform() - 1);
        smp.p = Vec(dim);
        double pr = R * (0.5 + 0.5 * rng.uniform());
        if (dim == 1) {
            smp.p[0] = (s % 2 ? -pr : pr);
        } else {
            double ang = 2 * kPi * rng.uniform();
            smp.p[0] = pr * std::cos(ang);
            smp.p[1] = pr * std::sin(ang);
        }
        pts.push_back(smp);
    }

    NondegeneracyReport rep;
    double lstep = std::log(gamma_hi / gamma_lo) / (gamma_count - 1);
    for (int i = 0; i < gamma_count; ++i) {
        double gamma = gamma_lo * std::exp(lstep * i);
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& smp : pts)
            worst = std::min(worst, n_expression(f, m, smp.x, smp.t, smp.p, gamma, eta, c,
                                                 ctilde, dim, q));
        rep.gammas.push_back(gamma);
        rep.values.push_back(worst);
    }

    // decade minima for the divergence verdict
    double g_first = gamma_lo * 10.0, g_last = gamma_hi / 10.0;
    double m_first = std::numeric_limits<double>::infinity(), m_last = m_first;
    for (int i = 0; i < gamma_count; ++i) {
        if (rep.gammas[i] <= g_first) m_first = std::min(m_first, rep.values[i]);
        if (rep.gammas[i] >= g_last) m_last = std::min(m_last, rep.values[i]);
    }
    rep.first_decade_min = m_first;
    rep.last_decade_min = m_last;
    rep.diverges = m_last > 0 && m_last >= 10.0 * m_first;

    // exponent from consecutive increments (offset-free on a geometric grid)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int i = 0; i + 1 < gamma_count; ++i) {
        double d = rep.values[i + 1] - rep.values[i];
        if (d <= 0) continue;
        double lx = std::log(rep.gammas[i]), ly = std::log(d);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    rep.exponent = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
    return rep;
}

VerticalNondegeneracyResult vertical_nondegeneracy_check(const NonlinearitySpec& f,
                                                         const MeasureSpec& m, const Vec& x0,
                                                         double t0,
                                                         const std::vector<double>& lambda_grid,
                                                         const QuadratureConfig& q) {
    VerticalNondegeneracyResult res;
    MeasureBound mb = measure_bound(m, q);
    const int dim = x0.dim();
    double fval = eval_F(f, x0, t0, Vec(dim), SymMat::identity(dim), mb.total);
    res.lambda_min = std::numeric_limits<double>::infinity();
    res.all_pass = true;
    for (double lam : lambda_grid) {
        double v = lam + fval;
        res.lambdas.push_back(lam);
        res.values.push_back(v);
        if (v > 0) {
            res.any_pass = true;
            res.lambda_min = std::min(res.lambda_min, lam);
        } else {
            res.all_pass = false;
        }
    }
    return res;
}

ScalingCheckReport scaling_check(const NonlinearitySpec& f, int dim, int samples,
                                 const std::vector<double>& eps_grid, double ctilde, Rng& rng) {
    ScalingCheckReport rep;
    rep.worst_s = std::numeric_limits<double>::infinity();
    rep.worst_s_prime = rep.worst_s;
    for (int s = 0; s < samples; ++s) {
        Vec x(dim), p(dim);
        for (int d = 0; d < dim; ++d) {
            x[d] = rng.uniform(-1, 1);
            p[d] = rng.uniform(-1, 1);
        }
        double pn = norm(p);
        if (pn < 1e-9) {
            p[0] = 0.3;
            pn = 0.3;
        }
        double R = rng.uniform(0.1, 1.0);
        double scale = R * (0.5 + 0.5 * rng.uniform()) / pn;
        p *= scale;  // R/2 <= |p| <= R
        double t = rng.uniform(0, 1);
        double gamma = std::exp(rng.uniform(0.0, std::log(1e4)));
        double l = rng.uniform(-10.0, ctilde);
        SymMat Xn = SymMat::identity(dim);
        Xn -= gamma * SymMat::outer(p);
        for (double eps : eps_grid) {
            {
                double lhs = eval_F(f, x, t, eps * p, eps * Xn, eps * l);
                double rhs = eval_F(f, x, t, p, Xn, l);
                rep.worst_s = std::min(rep.worst_s, lhs - eps * rhs);
            }
            {
                SymMat I = SymMat::identity(dim);
                double lp = std::min(l, ctilde);
                double lhs = eval_F(f, x, t, eps * p, eps * I, eps * lp);
                double rhs = eval_F(f, x, t, p, I, lp);
                rep.worst_s_prime = std::min(rep.worst_s_prime, lhs - eps * rhs);
            }
        }
    }
    rep.s_holds = rep.worst_s >= -1e-10;
    rep.s_prime_holds = rep.worst_s_prime >= -1e-10;
    if (f.form == FForm::GradientPower) {
        double b0 = f.b ? f.b(Vec(dim), 0.0) : 1.0;
        rep.regime_pass = f.m_exponent >= 1.0 || b0 >= 0.0;
    }
    return rep;
}

}  // namespace nmpl

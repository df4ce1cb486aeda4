#include "nmpl/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "nmpl/kernels.hpp"

namespace nmpl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class NlMode { None, Stencil1D, PerCell };

bool needs_gradient(FForm f) {
    return f == FForm::GrowingInterface || f == FForm::GradientPower ||
           f == FForm::Dislocation || f == FForm::LinearizedComparison;
}
bool needs_hessian(FForm f) {
    return f == FForm::Quasilinear || f == FForm::MixedLocalNonlocal ||
           f == FForm::MixedWeighted || f == FForm::LinearizedComparison;
}
bool zero_order_form(FForm f) { return f == FForm::Dislocation; }

}  // namespace

struct PreparedScheme::Impl {
    SchemeConfig cfg;
    GridGeom g;
    int dim = 1;
    double h[kMaxDim] = {1, 1, 1};
    int measure_dim = 0;  // leading block the nonlocal term acts on

    NlMode mode = NlMode::None;
    // stencil path (axis 0, periodic)
    std::vector<double> stencil;  // offset kernel, index j = shift (mod n0)
    double stencil_mass = 0;      // Σ_j stencil_j excluding the j=0 tap
    double drift1 = 0;            // gradient-compensation drift (axis 0)
    // per-cell path
    NodeSet nodes;
    Vec drift;
    SymMat sigma2;  // sub-cutoff second moment matrix

    mutable GridField work;  // carries exterior/boundary for value lookups

    double grad_scale_bound = 0;  // |∂F/∂p| estimate from the initial data
    double second_order_coef = 0; // Σ_d 2 A_dd/h_d² style bound
    double nl_mass_total = 0;     // discrete kernel mass incl. σ and drift parts

    // --- helpers ---
    int wrap(int i, int d) const {
        int n = g.n[d];
        i %= n;
        return i < 0 ? i + n : i;
    }
    double neighbor(const std::vector<double>& u, const std::array<int, kMaxDim>& c, int d,
                    int off, double t) const {
        int i = c[d] + off;
        if (g.mode == BoundaryMode::Periodic) {
            auto cc = c;
            cc[d] = wrap(i, d);
            return u[g.index(cc)];
        }
        if (i < 0 || i >= g.n[d]) {
            Vec x = g.point(c);
            x[d] = g.lo[d] + i * h[d];
            return cfg.field.exterior ? cfg.field.exterior(x, t)
                                      : throw PreconditionError("missing exterior data");
        }
        auto cc = c;
        cc[d] = i;
        return u[g.index(cc)];
    }

    void build_nonlocal();
    void compute_nonlocal(const std::vector<double>& u, double t,
                          std::vector<double>& out) const;
    void estimate_gradient_bound();
};

void PreparedScheme::Impl::build_nonlocal() {
    if (!cfg.m) {
        mode = NlMode::None;
        return;
    }
    const MeasureSpec& m = *cfg.m;
    measure_dim = m.carrier().dim;
    if (measure_dim > dim)
        throw PreconditionError("measure dimension exceeds grid dimension");
    bool directional = measure_dim < dim;
    bool zero_order = zero_order_form(cfg.f.form);
    bool has_jump = cfg.jump.has_value() || m.is_push_forward();

    QuadratureConfig q = cfg.nlcfg.quad;
    q.inner_radius = std::max(q.inner_radius, 0.5 * h[0]);
    double tail = resolve_tail_radius(m, q);
    nodes = build_nodes(m, q, 0.0, tail);

    // sub-cutoff second moment and node drift
    const AngularDecomp& ang = nodes.ang;
    double m2 = radial_power_moment(0.0, q.inner_radius, 2.0, nodes.beta);
    sigma2 = SymMat(measure_dim);
    drift = Vec(measure_dim);
    for (size_t d = 0; d < ang.omega.size(); ++d) {
        for (int a = 0; a < measure_dim; ++a) {
            for (int b = 0; b < measure_dim; ++b)
                sigma2(a, b) += ang.w[d] * ang.omega[d][a] * ang.omega[d][b] * m2;
            if (!zero_order) drift[a] += ang.w[d] * ang.omega[d][a] * nodes.rad.comp_r;
        }
    }
    for (int a = 0; a < measure_dim; ++a)
        if (std::abs(drift[a]) < 1e-13) drift[a] = 0;

    bool stencil_ok = g.mode == BoundaryMode::Periodic && measure_dim == 1 && !has_jump;
    if (stencil_ok && (dim == 1 || directional)) {
        mode = NlMode::Stencil1D;
        int n0 = g.n[0];
        stencil.assign(n0, 0.0);
        for (size_t d = 0; d < ang.omega.size(); ++d) {
            double w0 = ang.w[d];
            if (w0 == 0) continue;
            double om = ang.omega[d][0];
            for (size_t k = 0; k < nodes.rad.r.size(); ++k) {
                double pos = nodes.rad.r[k] * om / h[0];
                double w = w0 * nodes.rad.w[k];
                int i0 = static_cast<int>(std::floor(pos));
                double th = pos - i0;
                stencil[wrap(i0, 0)] += w * (1.0 - th);
                stencil[wrap(i0 + 1, 0)] += w * th;
            }
        }
        // sub-cutoff mass as a centered second difference
        double sc = 0.5 * sigma2(0, 0) / (h[0] * h[0]);
        stencil[wrap(1, 0)] += sc;
        stencil[wrap(-1, 0)] += sc;
        drift1 = drift.dim() > 0 ? drift[0] : 0.0;
        double total = kernels::sum(stencil.data(), stencil.size());
        stencil_mass = total - stencil[0];
        nl_mass_total = stencil_mass + std::abs(drift1) / h[0];
    } else {
        mode = NlMode::PerCell;
        double node_mass = 0;
        for (size_t d = 0; d < ang.omega.size(); ++d) {
            double s = 0;
            for (double w : nodes.rad.w) s += w;
            node_mass += ang.w[d] * s;
        }
        double sig = 0, dr = 0;
        for (int a = 0; a < measure_dim; ++a) {
            sig += sigma2(a, a) / (h[a] * h[a]);
            dr += std::abs(drift[a]) / h[a];
        }
        nl_mass_total = node_mass + sig + dr;
    }
}

void PreparedScheme::Impl::compute_nonlocal(const std::vector<double>& u, double t,
                                            std::vector<double>& out) const {
    const int64_t total = g.count();
    out.assign(total, 0.0);
    if (mode == NlMode::None) return;

    if (mode == NlMode::Stencil1D) {
        const int n0 = g.n[0];
        const int64_t rows = total / n0;
        // duplicated row buffer for circular dot products
        std::vector<double> row(2 * n0);
        for (int64_t r = 0; r < rows; ++r) {
            const double* ur;
            std::vector<double> tmp;
            if (dim == 1) {
                ur = u.data();
            } else {
                // axis 0 is the slow index; gather the row u(:, r)
                tmp.resize(n0);
                for (int i = 0; i < n0; ++i) tmp[i] = u[static_cast<int64_t>(i) * rows + r];
                ur = tmp.data();
            }
            std::memcpy(row.data(), ur, sizeof(double) * n0);
            std::memcpy(row.data() + n0, ur, sizeof(double) * n0);
            for (int i = 0; i < n0; ++i) {
                double conv = kernels::dot(stencil.data(), row.data() + i, n0);
                double val = conv - (stencil_mass + stencil[0]) * ur[i];
                if (drift1 != 0) {
                    double a = -drift1;  // advection velocity of the compensation
                    double dplus = (row[i + 1] - row[i]) / h[0];
                    double dminus = (row[i] - row[wrap(i - 1, 0) ]) / h[0];
                    val += a > 0 ? a * dplus : a * dminus;
                }
                int64_t idx = dim == 1 ? i : static_cast<int64_t>(i) * rows + r;
                out[idx] = val;
            }
        }
        return;
    }

    // per-cell quadrature through the interpolating field
    work.u = u;
    const bool zero_order = zero_order_form(cfg.f.form);
    const JumpMap* jm = cfg.jump ? &*cfg.jump : (nodes.jump ? nodes.jump.get() : nullptr);
    parallel_for(total, [&](int64_t b, int64_t e) {
        for (int64_t ci = b; ci < e; ++ci) {
            auto c = g.coords(ci);
            Vec x = g.point(c);
            double u0 = u[ci];
            double acc = 0;
            for (size_t d = 0; d < nodes.ang.omega.size(); ++d) {
                double aw = nodes.ang.w[d];
                if (aw == 0) continue;
                double s = 0;
                for (size_t k = 0; k < nodes.rad.r.size(); ++k) {
                    Vec z(dim);
                    for (int a = 0; a < measure_dim; ++a)
                        z[a] = nodes.rad.r[k] * nodes.ang.omega[d][a];
                    if (jm) {
                        Vec jz = jm->map(x, z);
                        for (int a = 0; a < dim; ++a) z[a] = jz[a];
                    }
                    Vec y = x;
                    y += z;
                    s += nodes.rad.w[k] * (work.value_at(y, t) - u0);
                }
                acc += aw * s;
            }
            // drift (gradient compensation), upwinded
            for (int a = 0; a < measure_dim; ++a) {
                if (drift[a] == 0) continue;
                double vel = -drift[a];
                double dp = (neighbor(u, c, a, +1, t) - u0) / h[a];
                double dm = (u0 - neighbor(u, c, a, -1, t)) / h[a];
                acc += vel > 0 ? vel * dp : vel * dm;
            }
            // sub-cutoff second differences
            for (int a = 0; a < measure_dim; ++a) {
                double second =
                    (neighbor(u, c, a, +1, t) - 2 * u0 + neighbor(u, c, a, -1, t)) /
                    (h[a] * h[a]);
                acc += 0.5 * sigma2(a, a) * second;
                for (int b2 = a + 1; b2 < measure_dim; ++b2) {
                    if (std::abs(sigma2(a, b2)) < 1e-13) continue;
                    // cross second difference
                    auto cc = c;
                    auto val = [&](int da, int db) {
                        cc = c;
                        cc[a] += da;
                        cc[b2] += db;
                        if (g.mode == BoundaryMode::Periodic) {
                            cc[a] = wrap(cc[a], a);
                            cc[b2] = wrap(cc[b2], b2);
                            return u[g.index(cc)];
                        }
                        if (cc[a] < 0 || cc[a] >= g.n[a] || cc[b2] < 0 || cc[b2] >= g.n[b2]) {
                            Vec xx = g.point(c);
                            xx[a] += da * h[a];
                            xx[b2] += db * h[b2];
                            return cfg.field.exterior(xx, t);
                        }
                        return u[g.index(cc)];
                    };
                    double cross = (val(1, 1) - val(1, -1) - val(-1, 1) + val(-1, -1)) /
                                   (4.0 * h[a] * h[b2]);
                    acc += sigma2(a, b2) * cross;
                }
            }
            (void)zero_order;
            out[ci] = acc;
        }
    });
}

void PreparedScheme::Impl::estimate_gradient_bound() {
    if (!needs_gradient(cfg.f.form)) {
        grad_scale_bound = 0;
        return;
    }
    // |∂F/∂p| over the initial data, with headroom
    const std::vector<double>& u0 = cfg.field.u;
    double gmax = 0;
    for (int64_t ci = 0; ci < g.count(); ++ci) {
        auto c = g.coords(ci);
        double s = 0;
        for (int d = 0; d < dim; ++d) {
            double dp = std::abs(neighbor(u0, c, d, +1, 0) - u0[ci]) / h[d];
            double dm = std::abs(u0[ci] - neighbor(u0, c, d, -1, 0)) / h[d];
            s += std::max(dp, dm) * std::max(dp, dm);
        }
        gmax = std::max(gmax, std::sqrt(s));
    }
    gmax *= 1.25;
    switch (cfg.f.form) {
        case FForm::GrowingInterface:
            grad_scale_bound = gmax;
            break;
        case FForm::GradientPower: {
            double bmax = 0;
            for (int64_t ci = 0; ci < g.count(); ci += std::max<int64_t>(1, g.count() / 64))
                bmax = std::max(bmax, std::abs(cfg.f.b ? cfg.f.b(g.point(g.coords(ci)), 0) : 1.0));
            grad_scale_bound =
                bmax * cfg.f.m_exponent * std::pow(std::max(gmax, 1e-12), cfg.f.m_exponent - 1);
            break;
        }
        case FForm::Dislocation: {
            double cmax = 0;
            for (int64_t ci = 0; ci < g.count(); ci += std::max<int64_t>(1, g.count() / 64))
                cmax = std::max(cmax,
                                std::abs(cfg.f.c_fn ? cfg.f.c_fn(g.point(g.coords(ci)), 0) : 0.0));
            auto mm = kernels::minmax(cfg.field.u.data(), cfg.field.u.size());
            grad_scale_bound = cmax + nl_mass_total * std::max(1.0, mm.max - mm.min);
            break;
        }
        case FForm::LinearizedComparison:
            grad_scale_bound = std::abs(cfg.f.lin_c);
            break;
        default:
            break;
    }
}

PreparedScheme::PreparedScheme(const SchemeConfig& cfg) : impl_(new Impl) {
    impl_->cfg = cfg;
    impl_->g = cfg.field.g;
    impl_->dim = impl_->g.dim;
    for (int d = 0; d < impl_->dim; ++d) impl_->h[d] = impl_->g.h(d);
    impl_->work = cfg.field;
    impl_->build_nonlocal();
    impl_->estimate_gradient_bound();

    // second-order coefficient bound
    const NonlinearitySpec& f = cfg.f;
    double coef = 0;
    if (f.form == FForm::Quasilinear) {
        for (int64_t ci = 0; ci < impl_->g.count(); ci += std::max<int64_t>(1, impl_->g.count() / 64)) {
            SymMat A = f.A ? f.A(impl_->g.point(impl_->g.coords(ci)), 0)
                           : SymMat::identity(impl_->dim);
            double s = 0;
            for (int a = 0; a < impl_->dim; ++a) {
                s += 2.0 * std::abs(A(a, a)) / (impl_->h[a] * impl_->h[a]);
                for (int b = 0; b < impl_->dim; ++b)
                    if (a != b) s += std::abs(A(a, b)) / (2.0 * impl_->h[a] * impl_->h[b]);
            }
            coef = std::max(coef, s);
        }
    } else if (f.form == FForm::MixedLocalNonlocal || f.form == FForm::MixedWeighted) {
        double cmax = 1.0;
        if (f.form == FForm::MixedWeighted && f.c_coef) {
            cmax = 0;
            for (int64_t ci = 0; ci < impl_->g.count(); ci += std::max<int64_t>(1, impl_->g.count() / 64))
                cmax = std::max(cmax, std::abs(f.c_coef(impl_->g.point(impl_->g.coords(ci)), 0)));
        }
        for (int d = f.split_dim; d < impl_->dim; ++d)
            coef += 2.0 * cmax / (impl_->h[d] * impl_->h[d]);
    } else if (f.form == FForm::LinearizedComparison) {
        for (int d = 0; d < impl_->dim; ++d)
            coef += 2.0 * f.pucci.Lambda / (impl_->h[d] * impl_->h[d]);
    }
    impl_->second_order_coef = coef;

    // mixed weighted scales the nonlocal mass by max a(x)
    if (f.form == FForm::MixedWeighted && f.a_coef) {
        double amax = 0;
        for (int64_t ci = 0; ci < impl_->g.count(); ci += std::max<int64_t>(1, impl_->g.count() / 64))
            amax = std::max(amax, std::abs(f.a_coef(impl_->g.point(impl_->g.coords(ci)), 0)));
        impl_->nl_mass_total *= std::max(amax, 1e-300);
    }
}

PreparedScheme::~PreparedScheme() = default;
PreparedScheme::PreparedScheme(PreparedScheme&&) noexcept = default;

double PreparedScheme::nonlocal_mass() const { return impl_->nl_mass_total; }
double PreparedScheme::second_order_coefficient() const { return impl_->second_order_coef; }
double PreparedScheme::gradient_coefficient() const {
    if (impl_->grad_scale_bound <= 0) return 0;
    double s = 0;
    for (int d = 0; d < impl_->dim; ++d) s += 1.0 / impl_->h[d];
    return impl_->grad_scale_bound * s;
}

double PreparedScheme::monotonicity_bound() const {
    double inv = 0;
    if (impl_->mode != NlMode::None) inv += impl_->nl_mass_total;
    inv += impl_->second_order_coef;
    if (impl_->grad_scale_bound > 0) {
        double s = 0;
        for (int d = 0; d < impl_->dim; ++d) s += 1.0 / impl_->h[d];
        inv += impl_->grad_scale_bound * s;
    }
    return inv > 0 ? 1.0 / inv : kInf;
}

void PreparedScheme::apply_step(std::vector<double>& u, double t, double dt) const {
    const Impl& im = *impl_;
    const GridGeom& g = im.g;
    const int64_t total = g.count();
    std::vector<double> nl;
    im.compute_nonlocal(u, t, nl);

    const NonlinearitySpec& f = im.cfg.f;
    const bool want_p = needs_gradient(f.form);
    const bool want_X = needs_hessian(f.form);

    std::vector<double> un(total);
    parallel_for(total, [&](int64_t b, int64_t e) {
        for (int64_t ci = b; ci < e; ++ci) {
            auto c = g.coords(ci);
            Vec x = g.point(c);
            double u0 = u[ci];

            Vec p(g.dim);
            if (want_p) {
                // one-sided gradient magnitudes; pick the monotone branch by the
                // sign of the coefficient multiplying |Du| in the update
                double coef = 0;
                switch (f.form) {
                    case FForm::GrowingInterface:
                        coef = -1;
                        break;
                    case FForm::GradientPower:
                        coef = -(f.b ? f.b(x, t) : 1.0);
                        break;
                    case FForm::Dislocation:
                        coef = (f.c_fn ? f.c_fn(x, t) : 0.0) + nl[ci];
                        break;
                    case FForm::LinearizedComparison:
                        coef = f.lin_c;
                        break;
                    default:
                        break;
                }
                double s = 0;
                for (int d = 0; d < g.dim; ++d) {
                    double dp = (im.neighbor(u, c, d, +1, t) - u0) / im.h[d];
                    double dm = (u0 - im.neighbor(u, c, d, -1, t)) / im.h[d];
                    double m1;
                    if (coef >= 0)  // update increases with |Du|: use the inflow slopes
                        m1 = std::max({dp, -dm, 0.0});
                    else
                        m1 = std::max({-dp, dm, 0.0});
                    s += m1 * m1;
                }
                p[0] = std::sqrt(s);
            }

            SymMat X(g.dim);
            if (want_X) {
                for (int d = 0; d < g.dim; ++d)
                    X(d, d) = (im.neighbor(u, c, d, +1, t) - 2 * u0 +
                               im.neighbor(u, c, d, -1, t)) /
                              (im.h[d] * im.h[d]);
                if (f.form == FForm::Quasilinear && g.dim > 1) {
                    for (int a = 0; a < g.dim; ++a)
                        for (int b2 = a + 1; b2 < g.dim; ++b2) {
                            auto cval = [&](int da, int db) {
                                auto cc = c;
                                Vec xx = x;
                                cc[a] += da;
                                cc[b2] += db;
                                bool inside = true;
                                for (int d2 : {a, b2})
                                    if (cc[d2] < 0 || cc[d2] >= g.n[d2]) inside = false;
                                if (g.mode == BoundaryMode::Periodic) {
                                    cc[a] = im.wrap(cc[a], a);
                                    cc[b2] = im.wrap(cc[b2], b2);
                                    return u[g.index(cc)];
                                }
                                if (!inside) {
                                    xx[a] += da * im.h[a];
                                    xx[b2] += db * im.h[b2];
                                    return im.cfg.field.exterior(xx, t);
                                }
                                return u[g.index(cc)];
                            };
                            double cr = (cval(1, 1) - cval(1, -1) - cval(-1, 1) +
                                         cval(-1, -1)) /
                                        (4.0 * im.h[a] * im.h[b2]);
                            X(a, b2) = X(b2, a) = cr;
                        }
                }
            }

            un[ci] = u0 - dt * eval_F(f, x, t, p, X, nl[ci]);
        }
    });
    u.swap(un);
}

StabilityInfo stability_dt(const SchemeConfig& cfg) {
    PreparedScheme ps(cfg);
    StabilityInfo info;
    double nl = ps.nonlocal_mass();
    info.nonlocal_bound = nl > 0 ? 1.0 / nl : kInf;
    double so = ps.second_order_coefficient();
    info.second_order_bound = so > 0 ? 1.0 / so : kInf;
    double gc = ps.gradient_coefficient();
    info.gradient_bound = gc > 0 ? 1.0 / gc : kInf;
    double bound = ps.monotonicity_bound();
    if (std::isfinite(bound)) {
        info.dt = 0.9 * bound;
        info.horizon_limited = false;
    } else {
        info.dt = cfg.t_end;
        info.horizon_limited = true;
    }
    return info;
}

std::vector<double> step(const std::vector<double>& u, double t, const SchemeConfig& cfg) {
    PreparedScheme ps(cfg);
    double bound = ps.monotonicity_bound();
    double dt = cfg.dt > 0 ? cfg.dt : 0.9 * bound;
    if (dt > bound * (1 + 1e-12))
        throw PreconditionError("step: dt exceeds the monotone stability bound");
    std::vector<double> out = u;
    ps.apply_step(out, t, dt);
    return out;
}

Trajectory simulate(const SchemeConfig& cfg) {
    PreparedScheme ps(cfg);
    double bound = ps.monotonicity_bound();
    double dt = cfg.dt;
    if (dt <= 0) dt = std::isfinite(bound) ? 0.9 * bound : cfg.t_end;
    if (dt > bound * (1 + 1e-12))
        throw PreconditionError("simulate: dt exceeds the monotone stability bound");

    Trajectory traj;
    traj.geom = cfg.field.g;
    std::vector<double> u = cfg.field.u;
    double t = 0;
    int stepn = 0;

    auto record = [&](bool snap) {
        auto mm = kernels::minmax(u.data(), u.size());
        int64_t argmax = 0;
        for (size_t i = 0; i < u.size(); ++i)
            if (u[i] == mm.max) {
                argmax = static_cast<int64_t>(i);
                break;
            }
        traj.stats.push_back({stepn, t, mm.max, mm.min, argmax});
        if (snap) traj.snaps.push_back({stepn, t, u});
    };
    record(true);

    double scale = std::max(1.0, std::abs(traj.stats[0].umax));
    while (t < cfg.t_end - 1e-14) {
        double step_dt = std::min(dt, cfg.t_end - t);
        double prev_max = traj.stats.back().umax;
        double prev_min = traj.stats.back().umin;
        ps.apply_step(u, t, step_dt);
        t += step_dt;
        ++stepn;
        bool snap = (stepn % std::max(1, cfg.snapshot_stride) == 0) || t >= cfg.t_end - 1e-14;
        record(snap);
        if (cfg.check_instability) {
            // boundary data may legitimately raise the extrema
            double ext_hi = -kInf, ext_lo = kInf;
            if (cfg.field.g.mode == BoundaryMode::Dirichlet && cfg.field.exterior) {
                for (int d = 0; d < cfg.field.g.dim; ++d)
                    for (double off : {-1.0, -0.1, 0.1, 1.0}) {
                        Vec x = cfg.field.g.point(cfg.field.g.coords(0));
                        x[d] = (off < 0 ? cfg.field.g.lo[d] : cfg.field.g.hi[d]) + off;
                        double v = cfg.field.exterior(x, t);
                        ext_hi = std::max(ext_hi, v);
                        ext_lo = std::min(ext_lo, v);
                    }
            }
            double tol = cfg.instability_tol * scale;
            if (traj.stats.back().umax > std::max(prev_max, ext_hi) + tol ||
                traj.stats.back().umin < std::min(prev_min, ext_lo) - tol)
                throw NumericalError("scheme instability detected at step " +
                                     std::to_string(stepn) + " (t = " + std::to_string(t) +
                                     "): extrema left the monotone envelope");
        }
    }
    return traj;
}

ComparisonReport discrete_comparison_check(const Trajectory& u, const Trajectory& v,
                                           double tol) {
    if (u.snaps.size() != v.snaps.size() || u.snaps.empty())
        throw PreconditionError("discrete_comparison_check: trajectories must share steps "
                                "(snapshot_stride = 1)");
    ComparisonReport rep;
    rep.max_diff_over_steps = -kInf;
    double prev = 0;
    for (size_t k = 0; k < u.snaps.size(); ++k) {
        const auto& a = u.snaps[k].u;
        const auto& b = v.snaps[k].u;
        if (a.size() != b.size())
            throw PreconditionError("discrete_comparison_check: grid mismatch");
        double md = kernels::max_signed_diff(a.data(), b.data(), a.size());
        if (k == 0) {
            rep.initial_max_diff = md;
        } else {
            rep.max_step_increase = std::max(rep.max_step_increase, md - prev);
        }
        prev = md;
        rep.max_diff_over_steps = std::max(rep.max_diff_over_steps, md);
    }
    rep.pass = rep.max_step_increase <= tol;
    return rep;
}

}  // namespace nmpl

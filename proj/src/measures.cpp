#include "nmpl/measures.hpp"

#include <algorithm>
#include <cmath>

namespace nmpl {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw PreconditionError(msg);
}

Vec plane_unit(int dim, int a0, int a1, double c0, double c1) {
    Vec e(dim);
    double n = std::hypot(c0, c1);
    e[a0] = c0 / n;
    e[a1] = c1 / n;
    return e;
}

// Oriented unit directions of the two charged lines z_{a0} = ±alpha z_{a1}.
std::vector<Vec> axis_line_dirs(const MeasureSpec& m) {
    // Line {(alpha s, s)} and {(-alpha s, s)} in the (a0,a1) plane.
    Vec ep = plane_unit(m.dim, m.axis_pair[0], m.axis_pair[1], m.alpha, 1.0);
    Vec em = plane_unit(m.dim, m.axis_pair[0], m.axis_pair[1], -m.alpha, 1.0);
    Vec epn = ep, emn = em;
    epn *= -1.0;
    emn *= -1.0;
    return {ep, em, epn, emn};
}

}  // namespace

MeasureSpec MeasureSpec::radial_stable(double beta, int dim) {
    require(beta > 0 && beta < 2, "radial_stable: beta must be in (0,2)");
    require(dim >= 1 && dim <= kMaxDim, "radial_stable: bad dimension");
    MeasureSpec m;
    m.kind = MeasureKind::RadialStable;
    m.beta = beta;
    m.dim = dim;
    return m;
}

MeasureSpec MeasureSpec::half_space_stable(double beta, int dim, int axis) {
    MeasureSpec m = radial_stable(beta, dim);
    require(axis >= 0 && axis < dim, "half_space_stable: bad axis");
    m.kind = MeasureKind::HalfSpaceStable;
    m.axis = axis;
    return m;
}

MeasureSpec MeasureSpec::cone_restricted(MeasureSpec base, double alpha, int a0, int a1) {
    require(alpha > 0, "cone_restricted: alpha must be positive");
    require(base.dim >= 2, "cone_restricted: base must be at least 2-d");
    require(a0 != a1 && a0 >= 0 && a1 >= 0 && a0 < base.dim && a1 < base.dim,
            "cone_restricted: bad axis pair");
    require(base.kind == MeasureKind::RadialStable || base.kind == MeasureKind::HalfSpaceStable,
            "cone_restricted: base must be a stable kind");
    MeasureSpec m;
    m.kind = MeasureKind::ConeRestricted;
    m.dim = base.dim;
    m.beta = base.beta;
    m.alpha = alpha;
    m.axis_pair[0] = a0;
    m.axis_pair[1] = a1;
    m.truncation_radius = base.truncation_radius;
    m.base = std::make_shared<MeasureSpec>(std::move(base));
    return m;
}

MeasureSpec MeasureSpec::axis_charging(double alpha, double beta, int dim, int a0, int a1) {
    require(alpha > 0, "axis_charging: alpha must be positive");
    require(beta > 0 && beta < 2, "axis_charging: beta must be in (0,2)");
    require(dim >= 2 && dim <= kMaxDim, "axis_charging: bad dimension");
    MeasureSpec m;
    m.kind = MeasureKind::AxisCharging;
    m.dim = dim;
    m.beta = beta;
    m.alpha = alpha;
    m.axis_pair[0] = a0;
    m.axis_pair[1] = a1;
    return m;
}

MeasureSpec MeasureSpec::zero_order_directional(std::function<double(const Vec&)> g, int dim) {
    require(static_cast<bool>(g), "zero_order_directional: angular density required");
    require(dim >= 1 && dim <= kMaxDim, "zero_order_directional: bad dimension");
    MeasureSpec m;
    m.kind = MeasureKind::ZeroOrderDirectional;
    m.dim = dim;
    m.beta = 1.0;  // kernel |z|^{-(N+1)}
    m.angular_density = std::move(g);
    return m;
}

MeasureSpec MeasureSpec::push_forward(MeasureSpec base, JumpMap j) {
    require(static_cast<bool>(j.map), "push_forward: jump map required");
    require(j.c0 > 0, "push_forward: jump constant must be positive");
    require(!base.is_push_forward(), "push_forward: nested push-forwards unsupported");
    MeasureSpec m;
    m.kind = MeasureKind::PushForward;
    m.dim = base.dim;
    m.beta = base.beta;
    m.truncation_radius = base.truncation_radius;
    m.base = std::make_shared<MeasureSpec>(std::move(base));
    m.jump = std::make_shared<JumpMap>(std::move(j));
    return m;
}

double MeasureSpec::radial_beta() const {
    const MeasureSpec& c = carrier();
    return c.kind == MeasureKind::ZeroOrderDirectional ? 1.0 : c.beta;
}

bool MeasureSpec::lower_dimensional_support() const {
    return carrier().kind == MeasureKind::AxisCharging;
}

bool MeasureSpec::symmetric() const {
    switch (kind) {
        case MeasureKind::RadialStable:
        case MeasureKind::AxisCharging:
            return true;
        case MeasureKind::ConeRestricted:
            return base->symmetric();
        case MeasureKind::HalfSpaceStable:
        case MeasureKind::PushForward:
            return false;
        case MeasureKind::ZeroOrderDirectional: {
            // sample g for evenness
            for (int k = 0; k < 8; ++k) {
                double th = (k + 0.37) * kPi / 4.0;
                Vec w(dim);
                w[0] = std::cos(th);
                if (dim > 1) w[1] = std::sin(th);
                Vec wn = w;
                wn *= -1.0;
                if (std::abs(angular_density(w) - angular_density(wn)) > 1e-12) return false;
            }
            return true;
        }
    }
    return false;
}

double MeasureSpec::density(const Vec& z) const {
    double r = norm(z);
    if (r == 0) throw PreconditionError("density undefined at the origin");
    switch (kind) {
        case MeasureKind::RadialStable:
            return std::pow(r, -(dim + beta));
        case MeasureKind::HalfSpaceStable:
            return z[axis] >= 0 ? std::pow(r, -(dim + beta)) : 0.0;
        case MeasureKind::ConeRestricted:
            return std::abs(z[axis_pair[0]]) > alpha * std::abs(z[axis_pair[1]])
                       ? base->density(z)
                       : 0.0;
        case MeasureKind::AxisCharging: {
            // 1-d density along the charged lines; zero off them.
            for (const Vec& e : axis_line_dirs(*this)) {
                double s = dot(z, e);
                if (s <= 0) continue;
                Vec res = z;
                res -= s * e;
                if (norm(res) <= 1e-12 * r) return std::pow(s, -(1.0 + beta));
            }
            return 0.0;
        }
        case MeasureKind::ZeroOrderDirectional: {
            Vec w = z;
            w *= 1.0 / r;
            return angular_density(w) * std::pow(r, -(dim + 1.0));
        }
        case MeasureKind::PushForward:
            throw PreconditionError(
                "unsupported kind: PushForward has no pointwise density; "
                "integrate against the base measure");
    }
    return 0.0;
}

bool MeasureSpec::support_contains(const Vec& z) const {
    double r = norm(z);
    if (r == 0) return false;
    switch (kind) {
        case MeasureKind::RadialStable:
            return true;
        case MeasureKind::HalfSpaceStable:
            return z[axis] >= 0;
        case MeasureKind::ConeRestricted:
            return std::abs(z[axis_pair[0]]) > alpha * std::abs(z[axis_pair[1]]) &&
                   base->support_contains(z);
        case MeasureKind::AxisCharging: {
            for (const Vec& e : axis_line_dirs(*this)) {
                double s = dot(z, e);
                if (s <= 0) continue;
                Vec res = z;
                res -= s * e;
                if (norm(res) <= 1e-9 * r) return true;
            }
            return false;
        }
        case MeasureKind::ZeroOrderDirectional: {
            Vec w = z;
            w *= 1.0 / r;
            return angular_density(w) > 0;
        }
        case MeasureKind::PushForward:
            throw PreconditionError(
                "PushForward support membership requires sampling the jump image");
    }
    return false;
}

bool MeasureSpec::support_intersects_box(const Vec& lo, const Vec& hi) const {
    if (kind == MeasureKind::AxisCharging) {
        // Exact line/box intersection; the lines are null sets, so cell-center
        // membership would miss them.
        for (const Vec& e : axis_line_dirs(*this)) {
            double smin = 0, smax = std::numeric_limits<double>::infinity();
            bool ok = true;
            for (int d = 0; d < dim; ++d) {
                if (std::abs(e[d]) < 1e-15) {
                    if (lo[d] > 0 || hi[d] < 0) {
                        ok = false;
                        break;
                    }
                    continue;
                }
                double a = lo[d] / e[d], b = hi[d] / e[d];
                if (a > b) std::swap(a, b);
                smin = std::max(smin, a);
                smax = std::min(smax, b);
            }
            if (ok && smin <= smax && smax > 1e-15) return true;
        }
        return false;
    }
    Vec c(dim);
    for (int d = 0; d < dim; ++d) c[d] = 0.5 * (lo[d] + hi[d]);
    return support_contains(c);
}

// --- angular decompositions -------------------------------------------------

double AngularDecomp::total_weight() const {
    double s = 0;
    for (double x : w) s += x;
    return s;
}

namespace {

double angular_indicator(const MeasureSpec& m, const Vec& omega) {
    switch (m.kind) {
        case MeasureKind::RadialStable:
            return 1.0;
        case MeasureKind::HalfSpaceStable:
            return omega[m.axis] >= 0 ? 1.0 : 0.0;
        case MeasureKind::ConeRestricted:
            return (std::abs(omega[m.axis_pair[0]]) > m.alpha * std::abs(omega[m.axis_pair[1]]))
                       ? angular_indicator(*m.base, omega)
                       : 0.0;
        case MeasureKind::ZeroOrderDirectional:
            return m.angular_density(omega);
        default:
            return 0.0;
    }
}

}  // namespace

AngularDecomp angular_decomposition(const MeasureSpec& m, int angular_points) {
    const MeasureSpec& c = m.carrier();
    AngularDecomp a;
    a.dim = c.dim;
    if (c.kind == MeasureKind::AxisCharging) {
        for (const Vec& e : axis_line_dirs(c)) {
            a.omega.push_back(e);
            a.w.push_back(1.0);
        }
        a.symmetric_pairs = true;
        return a;
    }
    if (c.dim == 1) {
        Vec plus{1.0}, minus{-1.0};
        double wp = angular_indicator(c, plus), wm = angular_indicator(c, minus);
        if (wp > 0 && wm > 0) {
            a.omega = {plus, minus};
            a.w = {wp, wm};
            a.symmetric_pairs = std::abs(wp - wm) < 1e-12;
        } else if (wp > 0) {
            a.omega = {plus};
            a.w = {wp};
        } else if (wm > 0) {
            a.omega = {minus};
            a.w = {wm};
        }
        return a;
    }
    if (c.dim != 2)
        throw PreconditionError("quadrature decompositions support dimension <= 2");
    int M = std::max(4, angular_points);
    if (M % 2) ++M;
    double dth = 2.0 * kPi / M;
    std::vector<double> wfull(M);
    bool all_positive = true;
    for (int j = 0; j < M; ++j) {
        double th = (j + 0.5) * dth;
        Vec w{std::cos(th), std::sin(th)};
        wfull[j] = angular_indicator(c, w) * dth;
        if (wfull[j] <= 0) all_positive = false;
    }
    bool mirror = all_positive;
    for (int j = 0; mirror && j < M / 2; ++j)
        if (std::abs(wfull[j] - wfull[j + M / 2]) > 1e-12) mirror = false;
    for (int j = 0; j < M; ++j) {
        if (wfull[j] <= 0 && !mirror) continue;
        double th = (j + 0.5) * dth;
        a.omega.push_back(Vec{std::cos(th), std::sin(th)});
        a.w.push_back(wfull[j]);
    }
    a.symmetric_pairs = mirror;
    return a;
}

double resolve_tail_radius(const MeasureSpec& m, const QuadratureConfig& q) {
    return q.tail_radius > 0 ? q.tail_radius : m.carrier().truncation_radius;
}

NodeSet build_nodes(const MeasureSpec& m, const QuadratureConfig& q, double r_lo, double r_hi,
                    const std::vector<double>& forced_breaks) {
    NodeSet ns;
    ns.ang = angular_decomposition(m, q.angular_points);
    ns.beta = m.radial_beta();
    ns.tail_radius = resolve_tail_radius(m, q);
    double lo = std::max(r_lo, q.inner_radius);
    double hi = std::min(r_hi, ns.tail_radius);
    std::vector<double> breaks = forced_breaks;
    breaks.push_back(1.0);
    if (hi > lo)
        ns.rad = make_radial_grid(lo, hi, ns.beta, q.shells_per_decade, q.gauss_points, breaks);
    ns.tail_mass =
        ns.ang.total_weight() * radial_power_moment(ns.tail_radius, 1e300, 0.0, ns.beta);
    if (m.is_push_forward()) ns.jump = m.jump;
    return ns;
}

// --- measure bound ----------------------------------------------------------

namespace {

// Ratio convergence test of the near-origin second moment under refinement:
// mass of [inner/4, inner] vs [inner, 4 inner]. A ratio >= ~1 means the
// refinement keeps adding as much as the previous block (beta >= 2).
void check_near_origin_convergence(double beta, double inner) {
    double b1 = radial_power_moment(inner, 4.0 * inner, 2.0, beta);
    double b2 = radial_power_moment(0.25 * inner, inner, 2.0, beta);
    if (!(b2 < 0.995 * b1))
        throw NumericalError(
            "near-origin second moment does not converge under refinement "
            "(singularity order >= 2?)");
}

}  // namespace

MeasureBound measure_bound(const MeasureSpec& m, const QuadratureConfig& q) {
    if (m.is_push_forward()) {
        Vec x(m.dim);
        return measure_bound_levy_ito(*m.base, *m.jump, x, q);
    }
    double beta = m.radial_beta();
    check_near_origin_convergence(beta, q.inner_radius);

    auto compute = [&](const QuadratureConfig& qc) {
        NodeSet ns = build_nodes(m, qc, 0.0, resolve_tail_radius(m, qc));
        double ang = ns.ang.total_weight();
        double sm = 0, tm = 0;
        int k1 = ns.rad.split_index(1.0);
        for (int k = 0; k < k1; ++k) sm += ns.rad.w[k] * ns.rad.r[k] * ns.rad.r[k];
        for (size_t k = k1; k < ns.rad.r.size(); ++k) tm += ns.rad.w[k];
        sm *= ang;
        tm *= ang;
        // closed-form innermost shell and tail remainder
        sm += ang * radial_power_moment(0.0, qc.inner_radius, 2.0, beta);
        tm += ns.tail_mass;
        return std::pair<double, double>{sm, tm};
    };

    auto [sm, tm] = compute(q);
    MeasureBound b;
    b.second_moment = sm;
    b.tail_mass = tm;
    b.total = sm + tm;
    if (q.estimate_error) {
        auto [sm2, tm2] = compute(q.refined());
        b.error_bound = std::abs(sm2 - sm) + std::abs(tm2 - tm);
        b.second_moment = sm2;
        b.tail_mass = tm2;
        b.total = sm2 + tm2;
    }
    b.m_applicable = m.carrier().kind != MeasureKind::ZeroOrderDirectional;
    b.pass = std::isfinite(b.total);
    return b;
}

MeasureBound measure_bound_levy_ito(const MeasureSpec& base, const JumpMap& j, const Vec& x,
                                    const QuadratureConfig& q) {
    if (base.is_push_forward())
        throw PreconditionError("measure_bound_levy_ito: base must not be a push-forward");
    check_near_origin_convergence(base.radial_beta(), q.inner_radius);

    auto compute = [&](const QuadratureConfig& qc) {
        NodeSet ns = build_nodes(base, qc, 0.0, resolve_tail_radius(base, qc));
        double sm = 0, tm = 0;
        int k1 = ns.rad.split_index(1.0);
        for (size_t d = 0; d < ns.ang.omega.size(); ++d) {
            double aw = ns.ang.w[d];
            if (aw == 0) continue;
            for (int k = 0; k < k1; ++k) {
                Vec z = ns.rad.r[k] * ns.ang.omega[d];
                sm += aw * ns.rad.w[k] * norm2(j.map(x, z));
            }
        }
        for (size_t k = k1; k < ns.rad.r.size(); ++k) tm += ns.rad.w[k];
        tm *= ns.ang.total_weight();
        tm += ns.tail_mass;
        // unresolved inner part bounded through |j| <= c0 |z|
        double inner_bound = j.c0 * j.c0 * ns.ang.total_weight() *
                             radial_power_moment(0.0, qc.inner_radius, 2.0, ns.beta);
        return std::array<double, 3>{sm, tm, inner_bound};
    };

    auto r = compute(q);
    MeasureBound b;
    b.second_moment = r[0];
    b.tail_mass = r[1];
    b.error_bound = r[2];
    if (q.estimate_error) {
        auto r2 = compute(q.refined());
        b.error_bound = r2[2] + std::abs(r2[0] - r[0]) + std::abs(r2[1] - r[1]);
        b.second_moment = r2[0];
        b.tail_mass = r2[1];
    }
    b.total = b.second_moment + b.tail_mass;
    b.pass = std::isfinite(b.total);
    return b;
}

// --- cone integrals ---------------------------------------------------------

bool cone_contains(const ConeSpec& c, const Vec& z) {
    double pz = std::abs(dot(c.p, z));
    return (1.0 - c.eta) * norm(z) * norm(c.p) <= pz && pz <= 1.0 / c.gamma;
}

namespace {

struct Interval {
    double a, b;
};

// Angular support of a product-form 2-d measure as intervals in [0, 2pi).
// Smooth angular densities (zero-order g) are handled by the weight, not here.
std::vector<Interval> angular_support_intervals(const MeasureSpec& m) {
    switch (m.kind) {
        case MeasureKind::RadialStable:
        case MeasureKind::ZeroOrderDirectional:
            return {{0.0, 2.0 * kPi}};
        case MeasureKind::HalfSpaceStable: {
            double c = m.axis == 0 ? 0.0 : 0.5 * kPi;
            return {{c - 0.5 * kPi, c + 0.5 * kPi}};
        }
        case MeasureKind::ConeRestricted: {
            double c = m.axis_pair[0] == 0 ? 0.0 : 0.5 * kPi;
            double phi = std::atan(1.0 / m.alpha);
            std::vector<Interval> mine{{c - phi, c + phi}, {c + kPi - phi, c + kPi + phi}};
            auto base = angular_support_intervals(*m.base);
            // intersect
            std::vector<Interval> out;
            for (const auto& u : mine)
                for (const auto& v : base) {
                    // compare on the universal cover: shift v by multiples of 2pi
                    for (int s = -1; s <= 1; ++s) {
                        double va = v.a + 2.0 * kPi * s, vb = v.b + 2.0 * kPi * s;
                        double a = std::max(u.a, va), b = std::min(u.b, vb);
                        if (b > a + 1e-14) out.push_back({a, b});
                    }
                }
            return out;
        }
        default:
            return {};
    }
}

double smooth_angular_weight(const MeasureSpec& m, double theta) {
    if (m.kind == MeasureKind::ZeroOrderDirectional)
        return m.angular_density(Vec{std::cos(theta), std::sin(theta)});
    return 1.0;
}

// Closed radial form of a cone integral over one admissible direction:
// ∫_0^R r^2 r^{-(1+beta)} dr with R = 1/(gamma |p·omega|).
double cone_radial_factor(double pdotw_abs, double gamma, double beta) {
    double R = 1.0 / (gamma * pdotw_abs);
    return std::pow(R, 2.0 - beta) / (2.0 - beta);
}

ConeMass cone_mass_2d_product(const MeasureSpec& m, const ConeSpec& c, ConeWeight wt,
                              int angular_points) {
    double pn = norm(c.p);
    double theta_p = std::atan2(c.p[1], c.p[0]);
    double phi_m = std::acos(std::min(1.0, 1.0 - c.eta));
    std::vector<Interval> cone_iv{{theta_p - phi_m, theta_p + phi_m},
                                  {theta_p + kPi - phi_m, theta_p + kPi + phi_m}};
    auto sup_iv = angular_support_intervals(m);
    double beta = m.radial_beta();
    const GaussRule& g = gauss_legendre(std::max(8, angular_points / 4));

    ConeMass out;
    double admissible_weight = 0;
    for (const auto& u : cone_iv) {
        for (const auto& v : sup_iv) {
            for (int s = -2; s <= 2; ++s) {
                double va = v.a + 2.0 * kPi * s, vb = v.b + 2.0 * kPi * s;
                double a = std::max(u.a, va), b = std::min(u.b, vb);
                if (b <= a + 1e-14) continue;
                admissible_weight += b - a;
                double mid = 0.5 * (a + b), half = 0.5 * (b - a);
                for (size_t k = 0; k < g.x.size(); ++k) {
                    double th = mid + half * g.x[k];
                    double pw = pn * std::cos(th - theta_p);
                    double apw = std::abs(pw);
                    if (apw < (1.0 - c.eta) * pn) continue;  // guard roundoff at edges
                    double f = cone_radial_factor(apw, c.gamma, beta);
                    double q = (wt == ConeWeight::ProjSquared) ? pw * pw : 1.0;
                    out.value += half * g.w[k] * smooth_angular_weight(m, th) * q * f;
                }
            }
        }
    }
    out.empty = admissible_weight <= 1e-14;
    return out;
}

}  // namespace

ConeMass cone_weighted_mass(const MeasureSpec& m, const ConeSpec& c, ConeWeight wt,
                            const QuadratureConfig& q, const Vec* x_for_jump) {
    require(norm(c.p) > 0, "cone_weighted_mass: direction p must be nonzero");
    require(c.eta >= 0 && c.eta < 1, "cone_weighted_mass: eta must be in [0,1)");
    require(c.gamma >= 1, "cone_weighted_mass: gamma must be >= 1");

    const MeasureSpec& cr = m.carrier();
    double beta = m.radial_beta();
    double pn = norm(c.p);

    if (m.is_push_forward()) {
        Vec x0(m.dim);
        const Vec& x = x_for_jump ? *x_for_jump : x0;
        auto compute = [&](const QuadratureConfig& qc) {
            NodeSet ns = build_nodes(*m.base, qc, 0.0, resolve_tail_radius(*m.base, qc));
            double acc = 0;
            for (size_t d = 0; d < ns.ang.omega.size(); ++d) {
                if (ns.ang.w[d] == 0) continue;
                for (size_t k = 0; k < ns.rad.r.size(); ++k) {
                    Vec y = m.jump->map(x, ns.rad.r[k] * ns.ang.omega[d]);
                    if (norm(y) > m.jump->c0 * ns.rad.r[k] * (1.0 + 1e-9))
                        throw PreconditionError("jump map violates |j(x,z)| <= C0 |z|");
                    if (!cone_contains(c, y)) continue;
                    double w0 = (wt == ConeWeight::ProjSquared)
                                    ? dot(c.p, y) * dot(c.p, y)
                                    : norm2(y);
                    acc += ns.ang.w[d] * ns.rad.w[k] * w0;
                }
            }
            return acc;
        };
        ConeMass out;
        out.value = compute(q);
        if (q.estimate_error) {
            double v2 = compute(q.refined());
            out.error_bound = std::abs(v2 - out.value);
            out.value = v2;
        }
        out.empty = out.value == 0;
        return out;
    }

    if (cr.kind == MeasureKind::AxisCharging) {
        ConeMass out;
        bool any = false;
        for (const Vec& e : axis_line_dirs(cr)) {
            double pe = dot(c.p, e);
            if (std::abs(pe) < (1.0 - c.eta) * pn || pe == 0) continue;
            any = true;
            double f = cone_radial_factor(std::abs(pe), c.gamma, beta);
            out.value += ((wt == ConeWeight::ProjSquared) ? pe * pe : 1.0) * f;
        }
        out.empty = !any;
        return out;
    }

    if (cr.dim == 1) {
        AngularDecomp a = angular_decomposition(cr, 2);
        ConeMass out;
        bool any = false;
        for (size_t d = 0; d < a.omega.size(); ++d) {
            double pw = dot(c.p, a.omega[d]);
            if (std::abs(pw) < (1.0 - c.eta) * pn || a.w[d] == 0) continue;
            any = true;
            double f = cone_radial_factor(std::abs(pw), c.gamma, beta);
            out.value += a.w[d] * ((wt == ConeWeight::ProjSquared) ? pw * pw : 1.0) * f;
        }
        out.empty = !any;
        return out;
    }

    if (cr.dim == 2) {
        ConeMass out = cone_mass_2d_product(cr, c, wt, q.angular_points);
        if (q.estimate_error) {
            ConeMass fine = cone_mass_2d_product(cr, c, wt, 2 * q.angular_points);
            out.error_bound = std::abs(fine.value - out.value);
            out.value = fine.value;
        }
        return out;
    }
    throw PreconditionError("cone_weighted_mass: dimension > 2 unsupported");
}

ConeScalingFit mc_scaling_probe(const MeasureSpec& m, const Vec& p, double eta,
                                double gamma_lo, double gamma_hi, int count,
                                const QuadratureConfig& q) {
    require(count >= 3, "mc_scaling_probe: need at least 3 gamma points");
    require(gamma_hi > gamma_lo && gamma_lo >= 1, "mc_scaling_probe: bad gamma range");
    require(gamma_hi / gamma_lo >= 100.0,
            "mc_scaling_probe: gamma grid must span at least two decades");
    ConeScalingFit fit;
    double step = std::log(gamma_hi / gamma_lo) / (count - 1);
    for (int i = 0; i < count; ++i) {
        double gamma = gamma_lo * std::exp(step * i);
        ConeSpec c{p, eta, gamma};
        ConeMass cm = cone_weighted_mass(m, c, ConeWeight::NormSquared, q);
        if (cm.empty || cm.value <= 0)
            throw NumericalError(
                "degenerate cone-scaling fit: cone mass vanished (support misses the cone)");
        fit.gammas.push_back(gamma);
        fit.masses.push_back(cm.value);
    }
    // least squares on log-log
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = count;
    for (int i = 0; i < n; ++i) {
        double x = std::log(fit.gammas[i]), y = std::log(fit.masses[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.constant = std::exp(fit.intercept);
    return fit;
}

}  // namespace nmpl

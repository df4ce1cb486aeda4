#include "nmpl/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nmpl/kernels.hpp"

namespace nmpl {

BarrierJet horizontal_barrier_eval(const HorizontalBarrier& b, const Vec& x, double t) {
    BarrierJet jet;
    Vec dx = x;
    dx -= b.xbar;
    double d = norm2(dx) + b.lambda * (t - b.t0) * (t - b.t0);
    double e = std::exp(-b.gamma * d);
    jet.v = std::exp(-b.gamma * b.R * b.R) - e;
    jet.vt = 2.0 * b.gamma * e * b.lambda * (t - b.t0);
    jet.dv = (2.0 * b.gamma * e) * dx;
    jet.d2v = SymMat::identity(x.dim());
    jet.d2v -= (2.0 * b.gamma) * SymMat::outer(dx);
    jet.d2v *= 2.0 * b.gamma * e;
    return jet;
}

BarrierJet vertical_barrier_eval(const VerticalBarrier& b, const Vec& x, double t) {
    BarrierJet jet;
    Vec dx = x;
    dx -= b.x0;
    double h = 0.5 * norm2(dx) + b.lambda * (t - b.t0);
    double e = std::exp(-h);
    jet.v = 1.0 - e;
    jet.vt = b.lambda * e;
    jet.dv = e * dx;
    jet.d2v = SymMat::identity(x.dim());
    jet.d2v -= SymMat::outer(dx);
    jet.d2v *= e;
    return jet;
}

BarrierNonlocalParts barrier_nonlocal_parts(const ExpQuadratic& e, const MeasureSpec& m,
                                            const ConeSpec* cone, const QuadratureConfig& q,
                                            bool compensate) {
    const double rate = e.rate;
    const double pn = cone ? norm(cone->p) : 0.0;

    auto run = [&](const QuadratureConfig& qc, BarrierNonlocalParts& out) {
        NodeSet ns = build_nodes(m, qc, 0.0, resolve_tail_radius(m, qc));
        const RadialGrid& rad = ns.rad;
        const size_t R = rad.r.size();
        const int k1 = rad.split_index(1.0);
        const bool paired = ns.ang.symmetric_pairs;
        if (!compensate && !paired)
            throw PreconditionError(
                "uncompensated barrier integral needs a symmetric measure");
        const size_t D = ns.ang.omega.size();
        const size_t dcount = paired ? D / 2 : D;

        double m2_inner = radial_power_moment(0.0, qc.inner_radius, 2.0, ns.beta);
        double m3_inner = radial_power_moment(0.0, qc.inner_radius, 3.0, ns.beta);

        for (size_t d = 0; d < dcount; ++d) {
            double aw = ns.ang.w[d];
            if (aw == 0) continue;
            const Vec& w = ns.ang.omega[d];
            double a = dot(e.q, w);
            double am = paired ? dot(e.q, ns.ang.omega[d + D / 2]) : 0.0;
            bool in_cone_dir = false;
            double Rcone = 0;
            if (cone) {
                double pw = std::abs(dot(cone->p, w));
                in_cone_dir = pw >= (1.0 - cone->eta) * pn && pw > 0;
                if (in_cone_dir) Rcone = 1.0 / (cone->gamma * pw);
            }
            int kc = in_cone_dir ? std::min(rad.split_index(Rcone), k1) : 0;

            auto integrand = [&](size_t k) {
                double r = rad.r[k];
                double y = rate * (a * r + e.s * r * r);
                if (-y > 700.0)
                    throw NumericalError("barrier integrand overflows (rate too large)");
                double g = std::expm1(-y);
                if (paired) {
                    double ym = rate * (am * r + e.s * r * r);
                    if (-ym > 700.0)
                        throw NumericalError("barrier integrand overflows (rate too large)");
                    g += std::expm1(-ym);  // mirrored node (compensation cancels)
                    return -g;
                }
                if (compensate && r < 1.0) return -(g + rate * a * r);
                return -g;
            };

            double acc3 = 0, acc2 = 0, acc1 = 0;
            for (size_t k = 0; k < R; ++k) {
                double v = integrand(k) * rad.w[k];
                if (static_cast<int>(k) < kc)
                    acc3 += v;
                else if (static_cast<int>(k) < k1)
                    acc2 += v;
                else
                    acc1 += v;
            }
            // uncompensated asymmetric case excluded above; for paired mode the
            // mirror direction has been folded in, so weights stay per-dir.
            out.w1 += aw * acc1;
            out.w2 += aw * acc2;
            out.w3 += aw * acc3;

            // innermost shell: -(expm1(-y)+rate a r) ≈ (rate s - rate² a²/2) r²
            auto inner_coeff = [&](double adir) {
                return rate * e.s - 0.5 * rate * rate * adir * adir;
            };
            auto inner_err = [&](double adir) {
                double aa = std::abs(adir);
                return (std::pow(rate * aa, 3) / 6.0 + rate * rate * aa * e.s) * m3_inner;
            };
            double ic = inner_coeff(a) * m2_inner;
            double ie = inner_err(a);
            if (paired) {
                ic += inner_coeff(am) * m2_inner;
                ie += inner_err(am);
            }
            if (in_cone_dir)
                out.w3 += aw * ic;
            else
                out.w2 += aw * ic;
            out.err += aw * ie;
        }
        // truncated tail: the integrand tends to 1 (expm1 -> -1) once the
        // exponent dominates; otherwise the tail only enters the error bound
        double tail_exponent =
            rate * (e.s * ns.tail_radius - norm(e.q)) * ns.tail_radius;
        if (tail_exponent > 50.0)
            out.w1 += ns.tail_mass;
        else
            out.err += ns.tail_mass;
    };

    BarrierNonlocalParts base;
    run(q, base);
    if (!q.estimate_error) return base;
    BarrierNonlocalParts fine;
    run(q.refined(), fine);
    fine.err += std::abs(fine.w1 - base.w1) + std::abs(fine.w2 - base.w2) +
                std::abs(fine.w3 - base.w3);
    return fine;
}

std::pair<Vec, double> sample_DR(const HorizontalBarrier& b, int index, Rng& rng) {
    const int dim = b.xbar.dim();
    double rho, tf, ang = 0;
    if (index < 12) {
        // structured: three radii x four time fractions (and angles in 2-d)
        static const double rf[3] = {0.55, 0.75, 0.97};
        static const double tfr[4] = {0.0, 0.5, -0.5, 0.9};
        rho = rf[index % 3] * b.R;
        tf = tfr[(index / 3) % 4];
        ang = 2.0 * kPi * (index / 3) / 4.0 + 0.3;
    } else {
        rho = b.R * (0.501 + 0.497 * rng.uniform());
        tf = 2.0 * rng.uniform() - 1.0;
        ang = 2.0 * kPi * rng.uniform();
    }
    Vec x = b.xbar;
    if (dim == 1) {
        x[0] += (index % 2 ? -rho : rho);
    } else {
        x[0] += rho * std::cos(ang);
        x[1] += rho * std::sin(ang);
    }
    double span = std::sqrt(std::max(b.R * b.R - rho * rho, 0.0) / b.lambda);
    double t = b.t0 + tf * 0.999 * span;
    return {x, t};
}

namespace {

struct BoundData {
    double m2;      // ∫_B |z|² μ
    double m_tail;  // ∫_{B^c} μ
    double ctilde;  // sum
};
BoundData bound_data(const MeasureSpec& m, const QuadratureConfig& q) {
    MeasureBound mb = measure_bound(m, q);
    return {mb.second_moment, mb.tail_mass, mb.total};
}

}  // namespace

MarginReport verify_nl_estimate(const HorizontalBarrier& b, const MeasureSpec& m, double eta,
                                double c, int nsamples, Rng& rng, const QuadratureConfig& q,
                                const std::vector<std::pair<Vec, double>>* samples) {
    double g0 = gamma0_threshold(b.R, eta);
    if (b.gamma < g0)
        throw PreconditionError("verify_nl_estimate: gamma below the proof threshold gamma0");
    double cmax = exp_ineq_constant(b.R, eta);
    if (!(c > 0 && c <= cmax))
        throw PreconditionError(
            "verify_nl_estimate: c must lie in (0, (1/2)e^{-delta_bar}]");

    BoundData bd = bound_data(m, q);
    MarginReport rep;
    rep.min_margin = std::numeric_limits<double>::infinity();
    rep.min_margin_normalized = rep.min_margin;

    int count = samples ? static_cast<int>(samples->size()) : nsamples;
    for (int i = 0; i < count; ++i) {
        auto [x, t] = samples ? (*samples)[i] : sample_DR(b, i, rng);
        if (!b.in_DR(x, t))
            throw PreconditionError("verify_nl_estimate: sample outside D_R");
        Vec p = x;
        p -= b.xbar;
        ConeSpec cone{p, eta, b.gamma};
        ConeMass K = cone_weighted_mass(m, cone, ConeWeight::ProjSquared, q);
        ExpQuadratic e{2.0 * p, 1.0, b.gamma};
        BarrierNonlocalParts parts = barrier_nonlocal_parts(e, m, &cone, q);

        double g = b.gamma;
        double bound_norm = 2.0 * g * (bd.ctilde - c * g * K.value);
        double margin_norm = bound_norm - parts.total();
        double tol = parts.err + 2.0 * c * g * g * K.error_bound + 1e-12;
        double pref = std::exp(-g * b.d(x, t));

        SampleMargin sm;
        sm.x = x;
        sm.t = t;
        sm.lhs = pref * parts.total();
        sm.rhs = pref * bound_norm;
        sm.margin = pref * margin_norm;
        sm.margin_normalized = margin_norm / (2.0 * g);
        rep.samples.push_back(sm);
        if (margin_norm / (2.0 * g) < rep.min_margin_normalized)
            rep.min_margin_normalized = margin_norm / (2.0 * g);
        rep.min_margin = std::min(rep.min_margin, sm.margin);
        rep.tolerance = std::max(rep.tolerance, tol / (2.0 * g));
    }
    rep.pass = rep.min_margin_normalized >= -rep.tolerance;
    return rep;
}

ComponentLemmaReport verify_component_lemmas(const HorizontalBarrier& b, const MeasureSpec& m,
                                             double eta, double c, int nsamples, Rng& rng,
                                             const QuadratureConfig& q) {
    double g0 = gamma0_threshold(b.R, eta);
    if (b.gamma < g0)
        throw PreconditionError("verify_component_lemmas: gamma below gamma0");
    double cmax = exp_ineq_constant(b.R, eta);
    if (!(c > 0 && c <= cmax))
        throw PreconditionError("verify_component_lemmas: c out of range");

    BoundData bd = bound_data(m, q);
    ComponentLemmaReport rep;
    for (MarginReport* r : {&rep.t1, &rep.t2, &rep.t3}) {
        r->min_margin = std::numeric_limits<double>::infinity();
        r->min_margin_normalized = r->min_margin;
    }
    double g = b.gamma;
    for (int i = 0; i < nsamples; ++i) {
        auto [x, t] = sample_DR(b, i, rng);
        Vec p = x;
        p -= b.xbar;
        ConeSpec cone{p, eta, g};
        ConeMass K = cone_weighted_mass(m, cone, ConeWeight::ProjSquared, q);
        ExpQuadratic e{2.0 * p, 1.0, g};
        BarrierNonlocalParts parts = barrier_nonlocal_parts(e, m, &cone, q);
        double pref = std::exp(-g * b.d(x, t));

        struct Row {
            MarginReport* rep;
            double w, bound;
        } rows[3] = {
            {&rep.t1, parts.w1, bd.m_tail},
            {&rep.t2, parts.w2, g * bd.m2},
            {&rep.t3, parts.w3, g * bd.m2 - 2.0 * c * g * g * K.value},
        };
        for (auto& row : rows) {
            double margin_norm = row.bound - row.w;
            SampleMargin sm;
            sm.x = x;
            sm.t = t;
            sm.lhs = pref * row.w;
            sm.rhs = pref * row.bound;
            sm.margin = pref * margin_norm;
            sm.margin_normalized = margin_norm / (2.0 * g);
            row.rep->samples.push_back(sm);
            row.rep->min_margin = std::min(row.rep->min_margin, sm.margin);
            row.rep->min_margin_normalized =
                std::min(row.rep->min_margin_normalized, sm.margin_normalized);
            double tol = (parts.err + 2.0 * c * g * g * K.error_bound + 1e-12) / (2.0 * g);
            row.rep->tolerance = std::max(row.rep->tolerance, tol);
        }
    }
    for (MarginReport* r : {&rep.t1, &rep.t2, &rep.t3})
        r->pass = r->min_margin_normalized >= -r->tolerance;
    return rep;
}

ExpIneqReport verify_exp_inequality(const SpaceTimeFn& phi, const MeasureSpec& m, double delta,
                                    int n_points, int n_ygrid, Rng& rng,
                                    const QuadratureConfig& q, double sample_halfwidth) {
    if (delta < 0) throw PreconditionError("verify_exp_inequality: delta must be >= 0");
    const double c = 0.5 * std::exp(-delta);
    ExpIneqReport rep;
    rep.scalar_min_margin = std::numeric_limits<double>::infinity();
    rep.functional_min_margin = rep.scalar_min_margin;

    // scalar inequality e^y - 1 >= y + c y² on y >= -delta
    double ymax = std::max(4.0, delta + 2.0);
    for (int k = 0; k < n_ygrid; ++k) {
        double y = -delta + (ymax + delta) * k / (n_ygrid - 1);
        double margin = std::expm1(y) - y - c * y * y;
        rep.scalar_min_margin = std::min(rep.scalar_min_margin, margin);
    }

    // functional form: ∫_D (e^{Δφ} - 1 - Δφ - c Δφ²) μ >= 0 pointwise on D
    const int dim = m.carrier().dim;
    auto margin_at = [&](const Vec& x, const QuadratureConfig& qc) {
        NodeSet ns = build_nodes(m, qc, 0.0, resolve_tail_radius(m, qc));
        double acc = 0;
        for (size_t d = 0; d < ns.ang.omega.size(); ++d) {
            if (ns.ang.w[d] == 0) continue;
            for (size_t k = 0; k < ns.rad.r.size(); ++k) {
                double dphi = phi.diff(x, ns.rad.r[k] * ns.ang.omega[d], 0.0);
                if (dphi < -delta) continue;
                if (dphi > 700.0)
                    throw NumericalError("exp inequality: e^phi grows beyond the kernel tail");
                double mv = std::expm1(dphi) - dphi - c * dphi * dphi;
                acc += ns.ang.w[d] * ns.rad.w[k] * mv;
            }
        }
        // innermost shell: integrand ≈ (1/2 - c)(Dφ·ω)² r², nonnegative (c <= 1/2)
        Vec g0 = phi.grad_or_fd(x, 0.0, 1e-5);
        double m2 = radial_power_moment(0.0, qc.inner_radius, 2.0, ns.beta);
        for (size_t d = 0; d < ns.ang.omega.size(); ++d) {
            double a = dot(g0, ns.ang.omega[d]);
            acc += ns.ang.w[d] * (0.5 - c) * a * a * m2;
        }
        return acc;
    };

    for (int i = 0; i < n_points; ++i) {
        Vec x(dim);
        for (int d = 0; d < dim; ++d) x[d] = rng.uniform(-sample_halfwidth, sample_halfwidth);
        double mcoarse = margin_at(x, q);
        double tol = 1e-12;
        if (q.estimate_error) {
            double mfine = margin_at(x, q.refined());
            tol += std::abs(mfine - mcoarse);
            mcoarse = mfine;
        }
        rep.functional_min_margin = std::min(rep.functional_min_margin, mcoarse);
        rep.tolerance = std::max(rep.tolerance, tol);
    }
    rep.pass = rep.scalar_min_margin >= -1e-12 &&
               rep.functional_min_margin >= -rep.tolerance;
    return rep;
}

namespace {

SupersolutionReport supersolution_common(const NonlinearitySpec& f, const MeasureSpec& m,
                                         double eps, const QuadratureConfig& q,
                                         const std::vector<std::pair<Vec, double>>& pts,
                                         const std::function<BarrierJet(const Vec&, double)>& jet_at,
                                         const std::function<ExpQuadratic(const Vec&, double)>& exq_at,
                                         const std::function<double(const Vec&, double)>& pref_at,
                                         double norm_scale_rate) {
    SupersolutionReport rep;
    rep.min_value = std::numeric_limits<double>::infinity();
    rep.min_normalized = rep.min_value;
    const bool zero_order = f.form == FForm::Dislocation;
    for (const auto& [x, t] : pts) {
        BarrierJet jet = jet_at(x, t);
        ExpQuadratic e = exq_at(x, t);
        BarrierNonlocalParts parts =
            barrier_nonlocal_parts(e, m, nullptr, q, /*compensate=*/!zero_order);
        double pref = pref_at(x, t);
        double nonlocal = pref * parts.total();
        double val =
            eps * jet.vt + eval_F(f, x, t, eps * jet.dv, eps * jet.d2v, eps * nonlocal);
        double denom = norm_scale_rate * eps * pref;
        SampleMargin sm;
        sm.x = x;
        sm.t = t;
        sm.lhs = val;
        sm.rhs = 0;
        sm.margin = val;
        sm.margin_normalized = val / denom;
        rep.samples.push_back(sm);
        rep.min_value = std::min(rep.min_value, val);
        rep.min_normalized = std::min(rep.min_normalized, sm.margin_normalized);
    }
    return rep;
}

}  // namespace

SupersolutionReport strict_supersolution_margin(const NonlinearitySpec& f,
                                                const HorizontalBarrier& b,
                                                const MeasureSpec& m, double eps, int nsamples,
                                                Rng& rng, const QuadratureConfig& q) {
    std::vector<std::pair<Vec, double>> pts;
    for (int i = 0; i < nsamples; ++i) pts.push_back(sample_DR(b, i, rng));
    return supersolution_common(
        f, m, eps, q, pts,
        [&](const Vec& x, double t) { return horizontal_barrier_eval(b, x, t); },
        [&](const Vec& x, double t) {
            (void)t;
            Vec p = x;
            p -= b.xbar;
            return ExpQuadratic{2.0 * p, 1.0, b.gamma};
        },
        [&](const Vec& x, double t) { return std::exp(-b.gamma * b.d(x, t)); },
        2.0 * b.gamma);
}

SupersolutionReport strict_supersolution_margin_vertical(const NonlinearitySpec& f,
                                                         const VerticalBarrier& b,
                                                         const MeasureSpec& m, double radius,
                                                         double eps, int nsamples, Rng& rng,
                                                         const QuadratureConfig& q) {
    std::vector<std::pair<Vec, double>> pts;
    const int dim = b.x0.dim();
    int guard = 0;
    while (static_cast<int>(pts.size()) < nsamples && guard++ < 100 * nsamples) {
        Vec x = b.x0;
        for (int d = 0; d < dim; ++d) x[d] += radius * (2.0 * rng.uniform() - 1.0);
        double t = b.t0 + radius * (2.0 * rng.uniform() - 1.0);
        Vec dx = x;
        dx -= b.x0;
        if (norm2(dx) + (t - b.t0) * (t - b.t0) > radius * radius) continue;
        if (b.h(x, t) >= 0) continue;  // need v < 0
        pts.emplace_back(x, t);
    }
    if (pts.empty()) pts.emplace_back(b.x0, b.t0 - 0.5 * radius);
    return supersolution_common(
        f, m, eps, q, pts,
        [&](const Vec& x, double t) { return vertical_barrier_eval(b, x, t); },
        [&](const Vec& x, double t) {
            (void)t;
            Vec qv = x;
            qv -= b.x0;
            return ExpQuadratic{qv, 0.5, 1.0};
        },
        [&](const Vec& x, double t) { return std::exp(-b.h(x, t)); }, 2.0);
}

}  // namespace nmpl

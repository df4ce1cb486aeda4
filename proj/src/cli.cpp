#include "nmpl/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "nmpl/config.hpp"
#include "nmpl/csv.hpp"
#include "nmpl/diagnostics.hpp"
#include "nmpl/expr.hpp"
#include "nmpl/reachability.hpp"

namespace nmpl::cli {

namespace {

namespace fs = std::filesystem;

struct SummaryRow {
    std::string name;
    std::string value;
    std::string threshold;
    bool pass;
};

struct Runner {
    Config cfg;
    std::string out_dir;
    uint64_t seed = 12345;
    std::vector<SummaryRow> rows;

    std::string path(const std::string& file) const { return out_dir + "/" + file; }
    void add(const std::string& name, double value, const std::string& threshold, bool pass) {
        rows.push_back({name, csv_num(value), threshold, pass});
    }
    void add(const std::string& name, const std::string& value, const std::string& threshold,
             bool pass) {
        rows.push_back({name, value, threshold, pass});
    }
    int finish() {
        CsvWriter w(path("summary.csv"));
        w.row({"name", "value", "threshold", "pass"});
        w.row({"seed", std::to_string(seed), "-", "true"});
        bool all = true;
        for (const auto& r : rows) {
            w.row({r.name, r.value, r.threshold, r.pass ? "true" : "false"});
            all = all && r.pass;
        }
        return all ? 0 : 2;
    }
};

MeasureSpec measure_from(const ConfigTable& t) {
    std::string kind = t.get_string("kind");
    int dim = t.get_int("dim", 1);
    double beta = t.get_double("beta", 1.5);
    MeasureSpec m;
    if (kind == "radial_stable") {
        m = MeasureSpec::radial_stable(beta, dim);
    } else if (kind == "half_space_stable") {
        m = MeasureSpec::half_space_stable(beta, dim, t.get_int("axis", 0));
    } else if (kind == "cone_restricted") {
        std::string base = t.get_string("base", "radial_stable");
        MeasureSpec b = base == "half_space_stable"
                            ? MeasureSpec::half_space_stable(beta, dim, t.get_int("axis", 0))
                            : MeasureSpec::radial_stable(beta, dim);
        m = MeasureSpec::cone_restricted(b, t.get_double("alpha", 1.0));
    } else if (kind == "axis_charging") {
        m = MeasureSpec::axis_charging(t.get_double("alpha", 1.0), beta, dim);
    } else if (kind == "zero_order_directional") {
        Expr g;
        if (t.has("g_expr")) g = Expr::parse(t.get_string("g_expr"));
        m = MeasureSpec::zero_order_directional(
            [g](const Vec& w) { return g.empty() ? 1.0 : g.eval(w, 0.0); }, dim);
    } else if (kind == "push_forward") {
        std::string base = t.get_string("base", "radial_stable");
        MeasureSpec b = base == "half_space_stable"
                            ? MeasureSpec::half_space_stable(beta, dim, t.get_int("axis", 0))
                            : MeasureSpec::radial_stable(beta, dim);
        double s = t.get_double("jump_scale", 1.0);
        JumpMap j;
        j.c0 = std::max(std::abs(s), 1e-12);
        j.map = [s](const Vec&, const Vec& z) { return s * z; };
        m = MeasureSpec::push_forward(std::move(b), std::move(j));
    } else {
        throw ConfigError("[measure] unknown kind '" + kind + "'");
    }
    m.truncation_radius = t.get_double("truncation_radius", 1e3);
    return m;
}

QuadratureConfig quad_from(const Config& cfg) {
    QuadratureConfig q;
    if (const ConfigTable* t = cfg.find("quadrature")) {
        q.shells_per_decade = t->get_int("shells_per_decade", q.shells_per_decade);
        q.gauss_points = t->get_int("gauss_points", q.gauss_points);
        q.angular_points = t->get_int("angular_points", q.angular_points);
        q.inner_radius = t->get_double("inner_radius", q.inner_radius);
        q.tail_radius = t->get_double("tail_radius", q.tail_radius);
        q.tolerance = t->get_double("tolerance", q.tolerance);
        q.estimate_error = t->get_bool("estimate_error", q.estimate_error);
    }
    return q;
}

NonlinearitySpec nonlinearity_from(const ConfigTable& t) {
    NonlinearitySpec f;
    std::string form = t.get_string("form");
    auto coeff = [&](const char* key, double dflt) {
        if (!t.has(key)) {
            double v = dflt;
            return std::function<double(const Vec&, double)>(
                [v](const Vec&, double) { return v; });
        }
        Expr e = Expr::parse(t.get_string(key));
        return std::function<double(const Vec&, double)>(
            [e](const Vec& x, double tt) { return e.eval(x, tt); });
    };
    if (form == "pure_nonlocal") {
        f.form = FForm::PureNonlocal;
    } else if (form == "growing_interface") {
        f.form = FForm::GrowingInterface;
    } else if (form == "gradient_power") {
        f.form = FForm::GradientPower;
        f.m_exponent = t.get_double("m", 2.0);
        f.b = coeff("b_expr", 1.0);
    } else if (form == "quasilinear") {
        f.form = FForm::Quasilinear;
        auto a = coeff("a_diag_expr", 1.0);
        f.A = [a](const Vec& x, double tt) {
            SymMat A = SymMat::identity(x.dim());
            A *= a(x, tt);
            return A;
        };
    } else if (form == "mixed_local_nonlocal") {
        f.form = FForm::MixedLocalNonlocal;
        f.split_dim = t.get_int("split_dim", 1);
    } else if (form == "mixed_weighted") {
        f.form = FForm::MixedWeighted;
        f.split_dim = t.get_int("split_dim", 1);
        f.a_coef = coeff("a_expr", 1.0);
        f.c_coef = coeff("cw_expr", 1.0);
    } else if (form == "dislocation") {
        f.form = FForm::Dislocation;
        f.c_fn = coeff("c_expr", 0.0);
    } else if (form == "linearized_comparison") {
        f.form = FForm::LinearizedComparison;
        f.lin_c = t.get_double("lin_c", 1.0);
        f.pucci.lambda = t.get_double("pucci_lambda", 0.0);
        f.pucci.Lambda = t.get_double("pucci_Lambda", 1.0);
    } else {
        throw ConfigError("[nonlinearity] unknown form '" + form + "'");
    }
    return f;
}

GridField grid_from(const ConfigTable& t) {
    GridField fld;
    auto lo = t.get_list("box_lo");
    auto hi = t.get_list("box_hi");
    auto cells = t.get_list("cells");
    if (lo.size() != hi.size() || lo.size() != cells.size() || lo.empty() ||
        lo.size() > kMaxDim)
        throw ConfigError("[grid] box_lo/box_hi/cells must agree and have 1..3 entries");
    fld.g.dim = static_cast<int>(lo.size());
    for (int d = 0; d < fld.g.dim; ++d) {
        fld.g.lo[d] = lo[d];
        fld.g.hi[d] = hi[d];
        fld.g.n[d] = static_cast<int>(cells[d]);
        if (fld.g.n[d] < 4) throw ConfigError("[grid] needs at least 4 cells per axis");
    }
    std::string bnd = t.get_string("boundary", "periodic");
    if (bnd == "periodic") {
        fld.g.mode = BoundaryMode::Periodic;
    } else if (bnd == "dirichlet") {
        fld.g.mode = BoundaryMode::Dirichlet;
        Expr ext = Expr::parse(t.get_string("exterior"));
        fld.exterior = [ext](const Vec& x, double tt) { return ext.eval(x, tt); };
    } else {
        throw ConfigError("[grid] boundary must be periodic or dirichlet");
    }
    fld.allocate();
    if (t.has("initial")) {
        Expr init = Expr::parse(t.get_string("initial"));
        for (int64_t i = 0; i < fld.g.count(); ++i)
            fld.u[i] = init.eval(fld.g.point(fld.g.coords(i)), 0.0);
    }
    return fld;
}

void write_trajectory(Runner& r, const Trajectory& traj, const std::string& prefix) {
    {
        CsvWriter w(r.path(prefix + "_summary.csv"));
        std::vector<std::string> hdr{"step", "t", "max"};
        for (int d = 0; d < traj.geom.dim; ++d) hdr.push_back("argmax_x" + std::to_string(d + 1));
        hdr.push_back("min");
        w.row(hdr);
        for (const auto& s : traj.stats) {
            std::vector<std::string> row{std::to_string(s.step), csv_num(s.t),
                                         csv_num(s.umax)};
            Vec x = traj.geom.point(traj.geom.coords(s.argmax));
            for (int d = 0; d < traj.geom.dim; ++d) row.push_back(csv_num(x[d]));
            row.push_back(csv_num(s.umin));
            w.row(row);
        }
    }
    for (const auto& snap : traj.snaps) {
        char name[64];
        std::snprintf(name, sizeof(name), "%s_%06d.csv", prefix.c_str(), snap.step);
        CsvWriter w(r.path(name));
        std::vector<std::string> hdr;
        for (int d = 0; d < traj.geom.dim; ++d) hdr.push_back("x" + std::to_string(d + 1));
        hdr.push_back("value");
        w.row(hdr);
        for (int64_t i = 0; i < traj.geom.count(); ++i) {
            std::vector<std::string> row;
            Vec x = traj.geom.point(traj.geom.coords(i));
            for (int d = 0; d < traj.geom.dim; ++d) row.push_back(csv_num(x[d]));
            row.push_back(csv_num(snap.u[i]));
            w.row(row);
        }
    }
}

SchemeConfig scheme_from(Runner& r, bool need_measure = true) {
    SchemeConfig sc;
    sc.field = grid_from(r.cfg.require("grid"));
    sc.f = nonlinearity_from(r.cfg.require("nonlinearity"));
    if (need_measure) sc.m = measure_from(r.cfg.require("measure"));
    sc.nlcfg.quad = quad_from(r.cfg);
    if (const ConfigTable* qt = r.cfg.find("quadrature"))
        sc.nlcfg.delta = qt->get_double("delta", sc.nlcfg.delta);
    const ConfigTable& g = r.cfg.require("grid");
    std::string dt = g.get_string("dt", "auto");
    sc.dt = dt == "auto" ? -1 : g.get_double("dt");
    sc.t_end = g.get_double("t_end", 0.1);
    sc.snapshot_stride = g.get_int("snapshot_stride", 10);
    return sc;
}

// --- commands ---------------------------------------------------------------

void cmd_check_measure(Runner& r) {
    MeasureSpec m = measure_from(r.cfg.require("measure"));
    QuadratureConfig q = quad_from(r.cfg);
    MeasureBound mb = measure_bound(m, q);
    r.add("C_mu_tilde", mb.total, "finite", mb.pass);
    r.add("second_moment", mb.second_moment, "finite", std::isfinite(mb.second_moment));
    r.add("tail_mass", mb.tail_mass, "finite", std::isfinite(mb.tail_mass));
    r.add("error_bound", mb.error_bound, "-", true);
    r.add("M_applicable", mb.m_applicable ? "true" : "not_applicable", "-", true);
    {
        CsvWriter w(r.path("measure_bound.csv"));
        w.row({"quantity", "value"});
        w.row({"second_moment", csv_num(mb.second_moment)});
        w.row({"tail_mass", csv_num(mb.tail_mass)});
        w.row({"total", csv_num(mb.total)});
        w.row({"error_bound", csv_num(mb.error_bound)});
    }
    if (const ConfigTable* p = r.cfg.find("probe")) {
        double eta = p->get_double("eta", 0.5);
        double glo = p->get_double("gamma_min", 10.0);
        double ghi = p->get_double("gamma_max", 1e4);
        int count = p->get_int("gamma_count", 13);
        Vec pvec(m.carrier().dim);
        auto pl = p->get_list("p", {1.0});
        for (int d = 0; d < m.carrier().dim && d < static_cast<int>(pl.size()); ++d)
            pvec[d] = pl[d];
        if (norm(pvec) == 0) pvec[0] = 1.0;
        ConeScalingFit fit = mc_scaling_probe(m, pvec, eta, glo, ghi, count, q);
        double expected = m.radial_beta() - 2.0;
        r.add("mc_slope", fit.slope, csv_num(expected) + "+-0.05",
              std::abs(fit.slope - expected) <= 0.05);
        r.add("mc_constant", fit.constant, "positive", fit.constant > 0);
        CsvWriter w(r.path("mc_probe.csv"));
        w.row({"gamma", "cone_mass"});
        for (size_t i = 0; i < fit.gammas.size(); ++i)
            w.row({csv_num(fit.gammas[i]), csv_num(fit.masses[i])});
    }
}

void cmd_simulate(Runner& r) {
    SchemeConfig sc = scheme_from(r);
    StabilityInfo st = stability_dt(sc);
    Trajectory traj = simulate(sc);
    write_trajectory(r, traj, "trajectory");
    r.add("dt", sc.dt > 0 ? sc.dt : st.dt, "<= stability bound", true);
    r.add("steps", static_cast<double>(traj.stats.size() - 1), "-", true);
    r.add("final_max", traj.stats.back().umax, "-", true);
    r.add("final_min", traj.stats.back().umin, "-", true);
    double tol = 1e-8 * std::max(1.0, std::abs(traj.stats[0].umax - traj.stats[0].umin));
    PropagationReport prop = propagation_test(traj, tol);
    r.add("vertical_persistence", prop.vertical_persistence ? "true" : "false", "-", true);
    r.add("horizontal_constant_final",
          prop.slices.back().horizontal_constant ? "true" : "false", "-", true);
}

void cmd_reachability(Runner& r) {
    MeasureSpec m = measure_from(r.cfg.require("measure"));
    const ConfigTable& g = r.cfg.require("grid");
    auto lo = g.get_list("box_lo");
    auto hi = g.get_list("box_hi");
    auto cells = g.get_list("cells");
    CellGrid cg;
    cg.dim = static_cast<int>(lo.size());
    for (int d = 0; d < cg.dim; ++d) {
        cg.lo[d] = lo[d];
        cg.hi[d] = hi[d];
        cg.n[d] = static_cast<int>(cells[d]);
    }
    Vec x0(cg.dim);
    auto x0l = g.get_list("x0", {0.0, 0.0, 0.0});
    for (int d = 0; d < cg.dim && d < static_cast<int>(x0l.size()); ++d) x0[d] = x0l[d];
    bool restrict_omega = g.get_bool("restrict_to_omega", false);
    int max_iter = g.get_int("max_iter", 1000);

    std::vector<uint8_t> omega(cg.count(), 1);
    if (g.has("omega_lo") && g.has("omega_hi")) {
        auto olo = g.get_list("omega_lo");
        auto ohi = g.get_list("omega_hi");
        for (int64_t i = 0; i < cg.count(); ++i) {
            Vec c = cg.center(cg.coords(i));
            bool inside = true;
            for (int d = 0; d < cg.dim; ++d)
                inside = inside && c[d] >= olo[d] && c[d] <= ohi[d];
            omega[i] = inside ? 1 : 0;
        }
    }

    ReachabilityResult res = iterate_reachable(m, {}, x0, cg, restrict_omega, &omega, max_iter);
    CoverageResult cov = covers_domain(res, cg, omega);
    r.add("iterations", static_cast<double>(res.iterations), "< max_iter", res.converged);
    r.add("covers_domain", cov.covered ? "true" : "false", "-", true);
    r.add("uncovered_cells", static_cast<double>(cov.uncovered.size()), "-", true);

    CsvWriter w(r.path("reach_mask.csv"));
    std::vector<std::string> hdr;
    for (int d = 0; d < cg.dim; ++d) hdr.push_back("x" + std::to_string(d + 1));
    hdr.push_back("reached");
    hdr.push_back("first_iter");
    w.row(hdr);
    for (int64_t i = 0; i < cg.count(); ++i) {
        std::vector<std::string> row;
        Vec c = cg.center(cg.coords(i));
        for (int d = 0; d < cg.dim; ++d) row.push_back(csv_num(c[d]));
        row.push_back(res.mask[i] ? "1" : "0");
        row.push_back(std::to_string(res.first_iter[i]));
        w.row(row);
    }
}

void cmd_verify_barrier(Runner& r) {
    MeasureSpec m = measure_from(r.cfg.require("measure"));
    const ConfigTable& p = r.cfg.require("probe");
    QuadratureConfig q = quad_from(r.cfg);
    int dim = m.carrier().dim;
    HorizontalBarrier b;
    b.xbar = Vec(dim);
    auto xb = p.get_list("xbar", {0.0, 0.0, 0.0});
    for (int d = 0; d < dim && d < static_cast<int>(xb.size()); ++d) b.xbar[d] = xb[d];
    b.t0 = p.get_double("t0", 0.0);
    b.R = p.get_double("R", 1.0);
    b.lambda = p.get_double("lambda", 1.0);
    double eta = p.get_double("eta", 0.5);
    double g0 = gamma0_threshold(b.R, eta);
    std::vector<double> factors = p.get_list("gamma_factors", {1.0, 2.0, 10.0});
    double c = p.get_double("c", exp_ineq_constant(b.R, eta));
    int samples = p.get_int("samples", 1000);

    CsvWriter w(r.path("barrier_margins.csv"));
    std::vector<std::string> hdr;
    for (int d = 0; d < dim; ++d) hdr.push_back("x" + std::to_string(d + 1));
    hdr.insert(hdr.end(), {"t", "gamma", "lhs", "rhs", "margin", "margin_normalized"});
    w.row(hdr);
    for (double f : factors) {
        b.gamma = f * g0;
        Rng rng(r.seed);
        MarginReport rep = verify_nl_estimate(b, m, eta, c, samples, rng, q);
        std::string tag = "gamma_" + csv_num(f) + "g0";
        r.add("nl_est_margin_" + tag, rep.min_margin_normalized,
              ">= -" + csv_num(rep.tolerance), rep.pass);
        for (const auto& s : rep.samples) {
            std::vector<std::string> row;
            for (int d = 0; d < dim; ++d) row.push_back(csv_num(s.x[d]));
            row.push_back(csv_num(s.t));
            row.push_back(csv_num(b.gamma));
            row.push_back(csv_num(s.lhs));
            row.push_back(csv_num(s.rhs));
            row.push_back(csv_num(s.margin));
            row.push_back(csv_num(s.margin_normalized));
            w.row(row);
        }
        Rng rng2(r.seed + 1);
        ComponentLemmaReport comp =
            verify_component_lemmas(b, m, eta, c, std::max(samples / 4, 16), rng2, q);
        r.add("lemma_T1_margin_" + tag, comp.t1.min_margin_normalized,
              ">= -" + csv_num(comp.t1.tolerance), comp.t1.pass);
        r.add("lemma_T2_margin_" + tag, comp.t2.min_margin_normalized,
              ">= -" + csv_num(comp.t2.tolerance), comp.t2.pass);
        r.add("lemma_T3_margin_" + tag, comp.t3.min_margin_normalized,
              ">= -" + csv_num(comp.t3.tolerance), comp.t3.pass);
    }
}

void cmd_verify_appendix(Runner& r) {
    MeasureSpec m = measure_from(r.cfg.require("measure"));
    const ConfigTable& p = r.cfg.require("probe");
    QuadratureConfig q = quad_from(r.cfg);
    std::vector<double> deltas = p.get_list("deltas", {0.0, 1.0, 3.0});
    int npts = p.get_int("samples", 100);
    int ny = p.get_int("ygrid", 10000);
    std::string phi_kind = p.get_string("phi", "quadratic");

    SpaceTimeFn phi;
    if (phi_kind == "quadratic") {
        phi.value = [](const Vec& x, double) { return -norm2(x); };
        phi.gradient = [](const Vec& x, double) { return -2.0 * x; };
        phi.delta = [](const Vec& x, const Vec& z, double) {
            return -(2.0 * dot(x, z) + norm2(z));
        };
    } else if (phi_kind == "cosine") {
        phi.value = [](const Vec& x, double) { return std::cos(x[0]); };
        phi.gradient = [](const Vec& x, double) {
            Vec g(x.dim());
            g[0] = -std::sin(x[0]);
            return g;
        };
    } else {
        Expr e = Expr::parse(phi_kind);
        phi.value = [e](const Vec& x, double tt) { return e.eval(x, tt); };
    }

    CsvWriter w(r.path("appendix_margins.csv"));
    w.row({"delta", "scalar_min_margin", "functional_min_margin", "tolerance"});
    for (double d : deltas) {
        Rng rng(r.seed);
        ExpIneqReport rep = verify_exp_inequality(phi, m, d, npts, ny, rng, q);
        r.add("exp_ineq_scalar_delta_" + csv_num(d), rep.scalar_min_margin, ">= -1e-12",
              rep.scalar_min_margin >= -1e-12);
        r.add("exp_ineq_functional_delta_" + csv_num(d), rep.functional_min_margin,
              ">= -" + csv_num(rep.tolerance), rep.functional_min_margin >= -rep.tolerance);
        w.row({csv_num(d), csv_num(rep.scalar_min_margin), csv_num(rep.functional_min_margin),
               csv_num(rep.tolerance)});
    }
}

void cmd_probe_nondegeneracy(Runner& r) {
    MeasureSpec m = measure_from(r.cfg.require("measure"));
    NonlinearitySpec f = nonlinearity_from(r.cfg.require("nonlinearity"));
    const ConfigTable& p = r.cfg.require("probe");
    QuadratureConfig q = quad_from(r.cfg);
    int dim = p.get_int("dim", std::max(m.carrier().dim, f.split_dim + (f.form == FForm::MixedLocalNonlocal || f.form == FForm::MixedWeighted ? 1 : 0)));
    Vec xbar(dim);
    double t0 = p.get_double("t0", 0.5);
    double R = p.get_double("R", 1.0);
    double eta = p.get_double("eta", 0.5);
    double c = p.get_double("c", 1.0);
    double glo = p.get_double("gamma_min", 10.0);
    double ghi = p.get_double("gamma_max", 1e4);
    int count = p.get_int("gamma_count", 25);
    int samples = p.get_int("samples", 64);
    Rng rng(r.seed);
    NondegeneracyReport rep =
        nondegeneracy_probe(f, m, xbar, t0, R, eta, c, glo, ghi, count, samples, rng, q);
    r.add("diverges", rep.diverges ? "true" : "false", "-", true);
    r.add("growth_exponent", rep.exponent, "-", true);
    r.add("first_decade_min", rep.first_decade_min, "-", true);
    r.add("last_decade_min", rep.last_decade_min, "-", true);
    CsvWriter w(r.path("nondegeneracy_probe.csv"));
    w.row({"gamma", "min_value"});
    for (size_t i = 0; i < rep.gammas.size(); ++i)
        w.row({csv_num(rep.gammas[i]), csv_num(rep.values[i])});

    if (p.has("lambda_grid")) {
        auto lg = p.get_list("lambda_grid");
        VerticalNondegeneracyResult v =
            vertical_nondegeneracy_check(f, m, Vec(dim), t0, lg, q);
        r.add("vertical_lambda_min",
              std::isfinite(v.lambda_min) ? v.lambda_min
                                          : std::numeric_limits<double>::quiet_NaN(),
              "-", v.any_pass);
    }
}

void cmd_check_scaling(Runner& r) {
    NonlinearitySpec f = nonlinearity_from(r.cfg.require("nonlinearity"));
    const ConfigTable& p = r.cfg.require("probe");
    int dim = p.get_int("dim", 1);
    int samples = p.get_int("samples", 200);
    auto eps = p.get_list("eps", {1.0, 0.5, 0.1, 0.01});
    double ctilde = p.get_double("ctilde", 1.0);
    if (const ConfigTable* mt = r.cfg.find("measure")) {
        MeasureSpec m = measure_from(*mt);
        ctilde = measure_bound(m, quad_from(r.cfg)).total;
    }
    Rng rng(r.seed);
    ScalingCheckReport rep = scaling_check(f, dim, samples, eps, ctilde, rng);
    r.add("scaling_S_worst", rep.worst_s, "report", true);
    r.add("scaling_Sprime_worst", rep.worst_s_prime, "report", true);
    r.add("scaling_S_holds", rep.s_holds ? "true" : "false", "-", true);
    r.add("scaling_Sprime_holds", rep.s_prime_holds ? "true" : "false", "-", true);
    if (f.form == FForm::GradientPower)
        r.add("gradient_power_regime", rep.regime_pass ? "pass" : "fail", "m>=1 or b>=0",
              rep.regime_pass);
}

void cmd_compare(Runner& r) {
    SchemeConfig sc = scheme_from(r);
    sc.snapshot_stride = 1;
    const ConfigTable& g = r.cfg.require("grid");
    Expr init2 = Expr::parse(g.get_string("initial2"));
    SchemeConfig sc2 = sc;
    for (int64_t i = 0; i < sc2.field.g.count(); ++i)
        sc2.field.u[i] = init2.eval(sc2.field.g.point(sc2.field.g.coords(i)), 0.0);
    // shared dt so the trajectories align
    if (sc.dt <= 0) {
        double dt1 = stability_dt(sc).dt, dt2 = stability_dt(sc2).dt;
        sc.dt = sc2.dt = std::min(dt1, dt2);
    }
    Trajectory tu = simulate(sc);
    Trajectory tv = simulate(sc2);
    ComparisonReport rep = discrete_comparison_check(tu, tv, 1e-12);
    r.add("initial_max_diff", rep.initial_max_diff, "-", true);
    r.add("max_diff_over_steps", rep.max_diff_over_steps, "-", true);
    r.add("comparison_violation", rep.max_step_increase, "<= 1e-12", rep.pass);
    CsvWriter w(r.path("compare.csv"));
    w.row({"step", "t", "max_u_minus_v"});
    for (size_t k = 0; k < tu.snaps.size(); ++k) {
        double md = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < tu.snaps[k].u.size(); ++i)
            md = std::max(md, tu.snaps[k].u[i] - tv.snaps[k].u[i]);
        w.row({std::to_string(tu.snaps[k].step), csv_num(tu.snaps[k].t), csv_num(md)});
    }
}

}  // namespace

int run(const std::vector<std::string>& args) {
    std::string command, config_path, out_dir = "out";
    uint64_t seed = 12345;
    int threads = 0;
    std::vector<std::string> positional;
    try {
        for (size_t i = 0; i < args.size(); ++i) {
            const std::string& a = args[i];
            auto next = [&]() -> const std::string& {
                if (i + 1 >= args.size()) throw ConfigError("missing value after " + a);
                return args[++i];
            };
            if (a == "--out")
                out_dir = next();
            else if (a == "--seed")
                seed = std::stoull(next());
            else if (a == "--threads")
                threads = std::stoi(next());
            else if (!a.empty() && a[0] == '-')
                throw ConfigError("unknown flag " + a);
            else
                positional.push_back(a);
        }
        if (positional.size() != 2)
            throw ConfigError(
                "usage: nmpl <command> <config> [--out DIR] [--seed N] [--threads K]");
        command = positional[0];
        config_path = positional[1];

        if (threads <= 0) {
            if (const char* env = std::getenv("NMPL_THREADS")) threads = std::atoi(env);
        }
        set_thread_count(threads > 0 ? threads : 1);

        Runner r;
        r.cfg = Config::parse_file(config_path);
        if (const ConfigTable* e = r.cfg.find("experiment")) {
            if (e->has("seed") && seed == 12345)
                seed = static_cast<uint64_t>(e->get_double("seed"));
            if (e->has("out") && out_dir == "out") out_dir = e->get_string("out");
        }
        r.seed = seed;
        r.out_dir = out_dir;
        fs::create_directories(out_dir);

        if (command == "check-measure")
            cmd_check_measure(r);
        else if (command == "simulate")
            cmd_simulate(r);
        else if (command == "reachability")
            cmd_reachability(r);
        else if (command == "verify-barrier")
            cmd_verify_barrier(r);
        else if (command == "verify-appendix")
            cmd_verify_appendix(r);
        else if (command == "probe-nondegeneracy")
            cmd_probe_nondegeneracy(r);
        else if (command == "check-scaling")
            cmd_check_scaling(r);
        else if (command == "compare")
            cmd_compare(r);
        else
            throw ConfigError("unknown command '" + command + "'");
        return r.finish();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace nmpl::cli

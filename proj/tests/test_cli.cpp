#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nmpl/cli.hpp"
#include "nmpl/csv.hpp"

namespace fs = std::filesystem;

namespace {

std::string write_config(const std::string& name, const std::string& text) {
    fs::create_directories("cli_tmp");
    std::string path = "cli_tmp/" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool summary_has(const std::string& dir, const std::string& name, const std::string& pass) {
    std::ifstream in(dir + "/summary.csv");
    std::string line;
    while (std::getline(in, line))
        if (line.find(name) == 0 && line.rfind("," + pass) == line.size() - pass.size() - 1)
            return true;
    return false;
}

}  // namespace

TEST_CASE("check-measure writes the summary and passes") {
    std::string cfg = write_config("measure.cfg",
                                   "[measure]\n"
                                   "kind = radial_stable\n"
                                   "beta = 1.5\n"
                                   "dim = 1\n");
    int rc = nmpl::cli::run({"check-measure", cfg, "--out", "cli_tmp/out_measure"});
    CHECK(rc == 0);
    std::string summary = slurp("cli_tmp/out_measure/summary.csv");
    CHECK(summary.find("C_mu_tilde,5.333333") != std::string::npos);
    CHECK(summary.find("seed,") != std::string::npos);
    CHECK(fs::exists("cli_tmp/out_measure/measure_bound.csv"));
}

TEST_CASE("missing table and bad configs exit with code 1") {
    std::string cfg = write_config("no_measure.cfg", "[grid]\nbox_lo = 0\n");
    CHECK(nmpl::cli::run({"check-measure", cfg, "--out", "cli_tmp/out_none"}) == 1);
    CHECK(nmpl::cli::run({"check-measure", "cli_tmp/does_not_exist.cfg"}) == 1);
    CHECK(nmpl::cli::run({"bogus-command", cfg}) == 1);
    CHECK(nmpl::cli::run({"check-measure"}) == 1);
    // invalid singularity order is a config-time precondition
    std::string bad = write_config("bad_beta.cfg",
                                   "[measure]\nkind = radial_stable\nbeta = 2.5\ndim = 1\n");
    CHECK(nmpl::cli::run({"check-measure", bad, "--out", "cli_tmp/out_bad"}) == 1);
}

TEST_CASE("reachability of the half-line support reports non-coverage") {
    std::string cfg = write_config("reach.cfg",
                                   "[measure]\n"
                                   "kind = half_space_stable\n"
                                   "beta = 1.5\n"
                                   "dim = 1\n"
                                   "axis = 0\n"
                                   "[grid]\n"
                                   "box_lo = -1\n"
                                   "box_hi = 1\n"
                                   "cells = 32\n"
                                   "x0 = 0\n");
    int rc = nmpl::cli::run({"reachability", cfg, "--out", "cli_tmp/out_reach"});
    CHECK(rc == 0);
    std::string summary = slurp("cli_tmp/out_reach/summary.csv");
    CHECK(summary.find("covers_domain,false") != std::string::npos);
    std::string mask = slurp("cli_tmp/out_reach/reach_mask.csv");
    CHECK(mask.find("x1,reached,first_iter") != std::string::npos);
}

TEST_CASE("simulate emits the trajectory files") {
    std::string cfg = write_config("sim.cfg",
                                   "[measure]\n"
                                   "kind = radial_stable\n"
                                   "beta = 1\n"
                                   "dim = 1\n"
                                   "[nonlinearity]\n"
                                   "form = pure_nonlocal\n"
                                   "[grid]\n"
                                   "box_lo = 0\n"
                                   "box_hi = 6.283185307179586\n"
                                   "cells = 64\n"
                                   "boundary = periodic\n"
                                   "initial = cos(x)\n"
                                   "t_end = 0.02\n"
                                   "snapshot_stride = 100\n");
    int rc = nmpl::cli::run({"simulate", cfg, "--out", "cli_tmp/out_sim"});
    CHECK(rc == 0);
    CHECK(fs::exists("cli_tmp/out_sim/trajectory_summary.csv"));
    CHECK(fs::exists("cli_tmp/out_sim/trajectory_000000.csv"));
    CHECK(summary_has("cli_tmp/out_sim", "final_max", "true"));
}

TEST_CASE("compare holds the discrete ordering") {
    std::string cfg = write_config("cmp.cfg",
                                   "[measure]\n"
                                   "kind = radial_stable\n"
                                   "beta = 1\n"
                                   "dim = 1\n"
                                   "[nonlinearity]\n"
                                   "form = pure_nonlocal\n"
                                   "[grid]\n"
                                   "box_lo = 0\n"
                                   "box_hi = 6.283185307179586\n"
                                   "cells = 48\n"
                                   "boundary = periodic\n"
                                   "initial = sin(x)\n"
                                   "initial2 = sin(x) + 0.5\n"
                                   "t_end = 0.02\n");
    int rc = nmpl::cli::run({"compare", cfg, "--out", "cli_tmp/out_cmp"});
    CHECK(rc == 0);
    CHECK(summary_has("cli_tmp/out_cmp", "comparison_violation", "true"));
    CHECK(fs::exists("cli_tmp/out_cmp/compare.csv"));
}

TEST_CASE("verify-appendix runs the inequality suite") {
    std::string cfg = write_config("appx.cfg",
                                   "[measure]\n"
                                   "kind = radial_stable\n"
                                   "beta = 1.5\n"
                                   "dim = 1\n"
                                   "[probe]\n"
                                   "deltas = 0, 1\n"
                                   "samples = 5\n"
                                   "ygrid = 500\n");
    int rc = nmpl::cli::run({"verify-appendix", cfg, "--out", "cli_tmp/out_appx"});
    CHECK(rc == 0);
    CHECK(fs::exists("cli_tmp/out_appx/appendix_margins.csv"));
}

TEST_CASE("numerical failures exit with code 2 and name the check") {
    // cone-scaling probe against a line-charging measure with the probe
    // direction orthogonal to the charged plane: degenerate fit
    std::string cfg = write_config("fail2.cfg",
                                   "[measure]\n"
                                   "kind = axis_charging\n"
                                   "alpha = 1\n"
                                   "beta = 1.5\n"
                                   "dim = 3\n"
                                   "[probe]\n"
                                   "eta = 0.5\n"
                                   "p = 0, 0, 1\n");
    CHECK(nmpl::cli::run({"check-measure", cfg, "--out", "cli_tmp/out_fail2"}) == 2);
}

TEST_CASE("csv numbers round-trip exactly") {
    nmpl::Rng rng(971);
    for (int k = 0; k < 2000; ++k) {
        double v = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform(-30, 30));
        std::string s = nmpl::csv_num(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(std::strtod(nmpl::csv_num(0.1).c_str(), nullptr) == 0.1);
}

TEST_CASE("identical seeds reproduce byte-identical outputs") {
    std::string cfg = write_config("det.cfg",
                                   "[measure]\n"
                                   "kind = radial_stable\n"
                                   "beta = 1.5\n"
                                   "dim = 1\n"
                                   "[probe]\n"
                                   "eta = 0.5\n"
                                   "gamma_factors = 2\n"
                                   "samples = 24\n"
                                   "[quadrature]\n"
                                   "estimate_error = false\n");
    int r1 = nmpl::cli::run({"verify-barrier", cfg, "--out", "cli_tmp/det_a", "--seed", "99"});
    int r2 = nmpl::cli::run({"verify-barrier", cfg, "--out", "cli_tmp/det_b", "--seed", "99"});
    CHECK(r1 == 0);
    CHECK(r2 == 0);
    CHECK(slurp("cli_tmp/det_a/summary.csv") == slurp("cli_tmp/det_b/summary.csv"));
    CHECK(slurp("cli_tmp/det_a/barrier_margins.csv") ==
          slurp("cli_tmp/det_b/barrier_margins.csv"));
    // a different seed moves the sampled margins
    nmpl::cli::run({"verify-barrier", cfg, "--out", "cli_tmp/det_c", "--seed", "100"});
    CHECK(slurp("cli_tmp/det_a/barrier_margins.csv") !=
          slurp("cli_tmp/det_c/barrier_margins.csv"));
}

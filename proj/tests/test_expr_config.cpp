#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "nmpl/config.hpp"
#include "nmpl/expr.hpp"

using namespace nmpl;

TEST_CASE("expression arithmetic and precedence") {
    Vec x{2.0, 3.0};
    CHECK(Expr::parse("1+2*3").eval(x, 0) == doctest::Approx(7.0));
    CHECK(Expr::parse("(1+2)*3").eval(x, 0) == doctest::Approx(9.0));
    CHECK(Expr::parse("2^3^1").eval(x, 0) == doctest::Approx(8.0));
    CHECK(Expr::parse("-x^2").eval(x, 0) == doctest::Approx(-4.0));  // unary binds the power
    CHECK(Expr::parse("10/4/5").eval(x, 0) == doctest::Approx(0.5));
    CHECK(Expr::parse("1 - 2 - 3").eval(x, 0) == doctest::Approx(-4.0));
}

TEST_CASE("expression functions, constants and variables") {
    Vec x{0.5, -1.0};
    CHECK(Expr::parse("cos(pi)").eval(x, 0) == doctest::Approx(-1.0));
    CHECK(Expr::parse("sin(0)").eval(x, 0) == doctest::Approx(0.0));
    CHECK(Expr::parse("exp(1)").eval(x, 0) == doctest::Approx(std::exp(1.0)));
    CHECK(Expr::parse("abs(y)").eval(x, 0) == doctest::Approx(1.0));
    CHECK(Expr::parse("sqrt(x1*8)").eval(x, 0) == doctest::Approx(2.0));
    CHECK(Expr::parse("min(x, t)").eval(x, 2.0) == doctest::Approx(0.5));
    CHECK(Expr::parse("max(x2, t)").eval(x, 2.0) == doctest::Approx(2.0));
    CHECK(Expr::parse("cos(x)*exp(-t)").eval(Vec{0.0}, 1.0) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("expression errors") {
    CHECK_THROWS_AS(Expr::parse("1 +"), ConfigError);
    CHECK_THROWS_AS(Expr::parse("foo(1)"), ConfigError);
    CHECK_THROWS_AS(Expr::parse("bar + 1"), ConfigError);
    CHECK_THROWS_AS(Expr::parse("(1+2"), ConfigError);
    CHECK_THROWS_AS(Expr::parse("min(1)"), ConfigError);
    CHECK_THROWS_AS(Expr::parse("1 2"), ConfigError);
}

TEST_CASE("config tables parse and validate") {
    Config cfg = Config::parse(
        "# comment\n"
        "[measure]\n"
        "kind = radial_stable\n"
        "beta = 1.5   # inline comment\n"
        "dim = 1\n"
        "\n"
        "[grid]\n"
        "box_lo = 0\n"
        "box_hi = 6.2832\n"
        "cells = 128, 64\n"
        "periodic = true\n");
    CHECK(cfg.require("measure").get_string("kind") == "radial_stable");
    CHECK(cfg.require("measure").get_double("beta") == doctest::Approx(1.5));
    CHECK(cfg.require("grid").get_list("cells").size() == 2);
    CHECK(cfg.require("grid").get_bool("periodic", false));
    CHECK(cfg.require("grid").get_double("missing", 7.0) == 7.0);

    CHECK_THROWS_WITH_AS(static_cast<void>(cfg.require("nonlinearity")),
                         "missing required [nonlinearity] table", ConfigError);
    CHECK_THROWS_AS(static_cast<void>(cfg.require("measure").get_string("axis")), ConfigError);
    CHECK_THROWS_AS(Config::parse("key = 1\n"), ConfigError);     // key outside table
    CHECK_THROWS_AS(Config::parse("[t]\nbad line\n"), ConfigError);
}

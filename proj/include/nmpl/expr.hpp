#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nmpl/common.hpp"

namespace nmpl {

// Tiny arithmetic expressions for config-driven coefficients and boundary
// data: + - * / ^, unary minus, cos sin exp abs sqrt min max, constants pi
// and e, variables x (or x1), y (x2), z (x3), t. Parsed once into postfix.
class Expr {
  public:
    Expr() = default;
    static Expr parse(const std::string& text);  // throws ConfigError

    double eval(const Vec& x, double t) const;
    bool empty() const { return prog_.empty(); }
    const std::string& text() const { return text_; }

  private:
    enum class Op : uint8_t {
        Const, Var, Neg, Add, Sub, Mul, Div, Pow, Cos, Sin, Exp, Abs, Sqrt, Min, Max
    };
    struct Node {
        Op op;
        double value = 0;
        int var = 0;  // 0..2 spatial, 3 = t
    };
    std::vector<Node> prog_;
    std::string text_;
};

}  // namespace nmpl

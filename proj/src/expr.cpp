#include "nmpl/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

namespace nmpl {

/* expr   := term { ('+'|'-') term }
 * term   := factor { ('*'|'/') factor }
 * factor := '-' factor | power
 * power  := primary [ '^' factor ]
 * primary:= number | ident | ident '(' expr {',' expr} ')' | '(' expr ')'
 */
Expr Expr::parse(const std::string& text) {
    Expr e;
    e.text_ = text;
    struct P {
        const std::string& s;
        size_t at = 0;
        std::vector<Node>& out;

        void skip() {
            while (at < s.size() && std::isspace(static_cast<unsigned char>(s[at]))) ++at;
        }
        char peek() {
            skip();
            return at < s.size() ? s[at] : '\0';
        }
        bool accept(char c) {
            if (peek() == c) {
                ++at;
                return true;
            }
            return false;
        }
        [[noreturn]] void fail(const std::string& msg) {
            throw ConfigError("expression error at position " + std::to_string(at) + ": " +
                              msg + " in '" + s + "'");
        }

        void expr() {
            term();
            while (true) {
                if (accept('+')) {
                    term();
                    out.push_back({Op::Add, 0, 0});
                } else if (accept('-')) {
                    term();
                    out.push_back({Op::Sub, 0, 0});
                } else {
                    return;
                }
            }
        }
        void term() {
            factor();
            while (true) {
                if (accept('*')) {
                    factor();
                    out.push_back({Op::Mul, 0, 0});
                } else if (accept('/')) {
                    factor();
                    out.push_back({Op::Div, 0, 0});
                } else {
                    return;
                }
            }
        }
        void factor() {
            if (accept('-')) {
                factor();
                out.push_back({Op::Neg, 0, 0});
                return;
            }
            power();
        }
        void power() {
            primary();
            if (accept('^')) {
                factor();  // right associative
                out.push_back({Op::Pow, 0, 0});
            }
        }
        void primary() {
            char c = peek();
            if (c == '(') {
                ++at;
                expr();
                if (!accept(')')) fail("expected ')'");
                return;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                char* end = nullptr;
                double v = std::strtod(s.c_str() + at, &end);
                if (end == s.c_str() + at) fail("bad number");
                at = end - s.c_str();
                out.push_back({Op::Const, v, 0});
                return;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                size_t b = at;
                while (at < s.size() && (std::isalnum(static_cast<unsigned char>(s[at])) ||
                                         s[at] == '_'))
                    ++at;
                std::string id = s.substr(b, at - b);
                if (accept('(')) {
                    int argc = 1;
                    expr();
                    while (accept(',')) {
                        expr();
                        ++argc;
                    }
                    if (!accept(')')) fail("expected ')'");
                    if (id == "cos" && argc == 1)
                        out.push_back({Op::Cos, 0, 0});
                    else if (id == "sin" && argc == 1)
                        out.push_back({Op::Sin, 0, 0});
                    else if (id == "exp" && argc == 1)
                        out.push_back({Op::Exp, 0, 0});
                    else if (id == "abs" && argc == 1)
                        out.push_back({Op::Abs, 0, 0});
                    else if (id == "sqrt" && argc == 1)
                        out.push_back({Op::Sqrt, 0, 0});
                    else if (id == "min" && argc == 2)
                        out.push_back({Op::Min, 0, 0});
                    else if (id == "max" && argc == 2)
                        out.push_back({Op::Max, 0, 0});
                    else
                        fail("unknown function '" + id + "' with " + std::to_string(argc) +
                             " argument(s)");
                    return;
                }
                if (id == "pi")
                    out.push_back({Op::Const, kPi, 0});
                else if (id == "e")
                    out.push_back({Op::Const, std::exp(1.0), 0});
                else if (id == "x" || id == "x1")
                    out.push_back({Op::Var, 0, 0});
                else if (id == "y" || id == "x2")
                    out.push_back({Op::Var, 0, 1});
                else if (id == "z" || id == "x3")
                    out.push_back({Op::Var, 0, 2});
                else if (id == "t")
                    out.push_back({Op::Var, 0, 3});
                else
                    fail("unknown identifier '" + id + "'");
                return;
            }
            fail("unexpected character");
        }
    } p{text, 0, e.prog_};
    p.expr();
    p.skip();
    if (p.at != text.size()) p.fail("trailing input");
    return e;
}

double Expr::eval(const Vec& x, double t) const {
    double stack[64];
    int top = 0;
    for (const Node& n : prog_) {
        switch (n.op) {
            case Op::Const:
                stack[top++] = n.value;
                break;
            case Op::Var:
                stack[top++] = n.var == 3 ? t : (n.var < x.dim() ? x[n.var] : 0.0);
                break;
            case Op::Neg:
                stack[top - 1] = -stack[top - 1];
                break;
            case Op::Add:
                --top;
                stack[top - 1] += stack[top];
                break;
            case Op::Sub:
                --top;
                stack[top - 1] -= stack[top];
                break;
            case Op::Mul:
                --top;
                stack[top - 1] *= stack[top];
                break;
            case Op::Div:
                --top;
                stack[top - 1] /= stack[top];
                break;
            case Op::Pow:
                --top;
                stack[top - 1] = std::pow(stack[top - 1], stack[top]);
                break;
            case Op::Cos:
                stack[top - 1] = std::cos(stack[top - 1]);
                break;
            case Op::Sin:
                stack[top - 1] = std::sin(stack[top - 1]);
                break;
            case Op::Exp:
                stack[top - 1] = std::exp(stack[top - 1]);
                break;
            case Op::Abs:
                stack[top - 1] = std::abs(stack[top - 1]);
                break;
            case Op::Sqrt:
                stack[top - 1] = std::sqrt(stack[top - 1]);
                break;
            case Op::Min:
                --top;
                stack[top - 1] = std::min(stack[top - 1], stack[top]);
                break;
            case Op::Max:
                --top;
                stack[top - 1] = std::max(stack[top - 1], stack[top]);
                break;
        }
    }
    return top > 0 ? stack[top - 1] : 0.0;
}

}  // namespace nmpl

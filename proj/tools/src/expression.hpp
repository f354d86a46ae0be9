#pragma once

#include <memory>
#include <string>

#include "glin/errors.hpp"

namespace glin::tool {

/// Variables an expression may reference.
struct ExprEnv {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
    double u = 0.0;
};

/// A parsed arithmetic expression over x, y, t, u with +, -, *, /, ^,
/// sin, cos, exp, numeric literals and pi. '^' is right-associative;
/// unary minus binds looser than '^'.
class Expression {
public:
    /// Throws ConfigError on syntax errors or unknown identifiers.
    static Expression parse(const std::string& text);

    double eval(const ExprEnv& env) const;

    /// Convenience single-variable views.
    double eval_u(double u) const { return eval({.u = u}); }
    double eval_x(double x) const { return eval({.x = x}); }
    double eval_xt(double x, double t) const { return eval({.x = x, .t = t}); }
    double eval_xy(double x, double y) const { return eval({.x = x, .y = y}); }
    double eval_xyu(double x, double y, double u) const { return eval({.x = x, .y = y, .u = u}); }

    const std::string& text() const noexcept { return text_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace glin::tool

#include "expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

namespace glin::tool {

namespace {

enum class Op { Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Num, Var };
enum class Var { X, Y, T, U };

}  // namespace

struct Expression::Node {
    Op op = Op::Num;
    double value = 0.0;
    Var var = Var::X;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_num(double v) {
    auto n = std::make_shared<Expression::Node>();
    n->op = Op::Num;
    n->value = v;
    return n;
}

NodePtr make_var(Var v) {
    auto n = std::make_shared<Expression::Node>();
    n->op = Op::Var;
    n->var = v;
    return n;
}

NodePtr make_node(Op op, NodePtr lhs, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr run() {
        NodePtr root = parse_sum();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("expression '" + text_ + "': " + what + " at position " +
                          std::to_string(pos_));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool consume(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        while (true) {
            if (consume('+')) {
                lhs = make_node(Op::Add, lhs, parse_product());
            } else if (consume('-')) {
                lhs = make_node(Op::Sub, lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        while (true) {
            if (consume('*')) {
                lhs = make_node(Op::Mul, lhs, parse_unary());
            } else if (consume('/')) {
                lhs = make_node(Op::Div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (consume('-')) {
            return make_node(Op::Neg, parse_unary());
        }
        (void)consume('+');
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (consume('^')) {
            return make_node(Op::Pow, base, parse_unary());  // right associative
        }
        return base;
    }

    NodePtr parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            return parse_identifier();
        }
        if (consume('(')) {
            NodePtr inner = parse_sum();
            if (!consume(')')) {
                fail("missing ')'");
            }
            return inner;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        std::size_t end = 0;
        double v = 0.0;
        try {
            v = std::stod(text_.substr(pos_), &end);
        } catch (const std::exception&) {
            fail("malformed number");
        }
        pos_ += end;
        return make_num(v);
    }

    NodePtr parse_identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name = text_.substr(start, pos_ - start);
        if (name == "x") return make_var(Var::X);
        if (name == "y") return make_var(Var::Y);
        if (name == "t") return make_var(Var::T);
        if (name == "u") return make_var(Var::U);
        if (name == "pi") return make_num(std::numbers::pi);
        if (name == "sin" || name == "cos" || name == "exp") {
            if (!consume('(')) {
                fail("'" + name + "' needs parenthesized argument");
            }
            NodePtr arg = parse_sum();
            if (!consume(')')) {
                fail("missing ')'");
            }
            const Op op = (name == "sin") ? Op::Sin : (name == "cos") ? Op::Cos : Op::Exp;
            return make_node(op, arg);
        }
        fail("unknown identifier '" + name + "'");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

double eval_node(const Expression::Node& node, const ExprEnv& env) {
    switch (node.op) {
        case Op::Num: return node.value;
        case Op::Var:
            switch (node.var) {
                case Var::X: return env.x;
                case Var::Y: return env.y;
                case Var::T: return env.t;
                case Var::U: return env.u;
            }
            return 0.0;
        case Op::Add: return eval_node(*node.lhs, env) + eval_node(*node.rhs, env);
        case Op::Sub: return eval_node(*node.lhs, env) - eval_node(*node.rhs, env);
        case Op::Mul: return eval_node(*node.lhs, env) * eval_node(*node.rhs, env);
        case Op::Div: return eval_node(*node.lhs, env) / eval_node(*node.rhs, env);
        case Op::Pow: return std::pow(eval_node(*node.lhs, env), eval_node(*node.rhs, env));
        case Op::Neg: return -eval_node(*node.lhs, env);
        case Op::Sin: return std::sin(eval_node(*node.lhs, env));
        case Op::Cos: return std::cos(eval_node(*node.lhs, env));
        case Op::Exp: return std::exp(eval_node(*node.lhs, env));
    }
    return 0.0;
}

}  // namespace

Expression Expression::parse(const std::string& text) {
    Expression expr;
    expr.text_ = text;
    expr.root_ = Parser(text).run();
    return expr;
}

double Expression::eval(const ExprEnv& env) const {
    if (!root_) {
        throw ConfigError("empty expression evaluated");
    }
    return eval_node(*root_, env);
}

}  // namespace glin::tool

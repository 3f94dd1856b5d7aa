#include "odeheat/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace odeheat {

struct Expression::Node {
    enum class Kind { Number, VarX, VarT, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };
    Kind kind;
    double value = 0.0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Number;
    n->value = v;
    return n;
}

[[noreturn]] void fail(const std::string& text, std::size_t pos, const std::string& why) {
    throw std::invalid_argument("expression error at column " + std::to_string(pos + 1) +
                                " in \"" + text + "\": " + why);
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr run() {
        auto node = parse_sum();
        skip_space();
        if (pos_ != text_.size())
            fail(text_, pos_, "unexpected trailing input");
        return node;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_sum() {
        auto node = parse_product();
        for (;;) {
            if (consume('+'))
                node = make(Node::Kind::Add, node, parse_product());
            else if (consume('-'))
                node = make(Node::Kind::Sub, node, parse_product());
            else
                return node;
        }
    }

    NodePtr parse_product() {
        auto node = parse_unary();
        for (;;) {
            if (consume('*'))
                node = make(Node::Kind::Mul, node, parse_unary());
            else if (consume('/'))
                node = make(Node::Kind::Div, node, parse_unary());
            else
                return node;
        }
    }

    NodePtr parse_unary() {
        if (consume('-'))
            return make(Node::Kind::Neg, parse_unary());
        if (consume('+'))
            return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        auto base = parse_primary();
        if (consume('^'))
            return make(Node::Kind::Pow, base, parse_unary()); // right-assoc, binds unary exponent
        return base;
    }

    NodePtr parse_primary() {
        skip_space();
        if (pos_ >= text_.size())
            fail(text_, pos_, "unexpected end of expression");
        const char ch = text_[pos_];

        if (ch == '(') {
            ++pos_;
            auto node = parse_sum();
            if (!consume(')'))
                fail(text_, pos_, "missing ')'");
            return node;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            const char* begin = text_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin)
                fail(text_, pos_, "malformed number");
            pos_ += static_cast<std::size_t>(end - begin);
            return make_number(v);
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            const std::string name = text_.substr(start, pos_ - start);
            if (name == "x") return make(Node::Kind::VarX);
            if (name == "t") return make(Node::Kind::VarT);
            if (name == "pi") return make_number(3.14159265358979323846);
            if (name == "sin" || name == "cos" || name == "exp") {
                if (!consume('('))
                    fail(text_, pos_, "expected '(' after function " + name);
                auto arg = parse_sum();
                if (!consume(')'))
                    fail(text_, pos_, "missing ')' after function argument");
                const auto kind = name == "sin"   ? Node::Kind::Sin
                                  : name == "cos" ? Node::Kind::Cos
                                                  : Node::Kind::Exp;
                return make(kind, arg);
            }
            fail(text_, start, "unknown identifier '" + name + "'");
        }
        fail(text_, pos_, std::string("unexpected character '") + ch + "'");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

double eval_node(const Node& n, double x, double t) {
    switch (n.kind) {
        case Node::Kind::Number: return n.value;
        case Node::Kind::VarX: return x;
        case Node::Kind::VarT: return t;
        case Node::Kind::Add: return eval_node(*n.lhs, x, t) + eval_node(*n.rhs, x, t);
        case Node::Kind::Sub: return eval_node(*n.lhs, x, t) - eval_node(*n.rhs, x, t);
        case Node::Kind::Mul: return eval_node(*n.lhs, x, t) * eval_node(*n.rhs, x, t);
        case Node::Kind::Div: return eval_node(*n.lhs, x, t) / eval_node(*n.rhs, x, t);
        case Node::Kind::Pow: return std::pow(eval_node(*n.lhs, x, t), eval_node(*n.rhs, x, t));
        case Node::Kind::Neg: return -eval_node(*n.lhs, x, t);
        case Node::Kind::Sin: return std::sin(eval_node(*n.lhs, x, t));
        case Node::Kind::Cos: return std::cos(eval_node(*n.lhs, x, t));
        case Node::Kind::Exp: return std::exp(eval_node(*n.lhs, x, t));
    }
    return 0.0;
}

} // namespace

Expression Expression::parse(const std::string& text) {
    return Expression(text, Parser(text).run());
}

double Expression::eval(double x, double t) const { return eval_node(*root_, x, t); }

Expression::Expression(std::string text, std::shared_ptr<const Node> root)
    : text_(std::move(text)), root_(std::move(root)) {}

Expression::Expression(Expression&&) noexcept = default;
Expression& Expression::operator=(Expression&&) noexcept = default;
Expression::Expression(const Expression&) = default;
Expression& Expression::operator=(const Expression&) = default;
Expression::~Expression() = default;

} // namespace odeheat

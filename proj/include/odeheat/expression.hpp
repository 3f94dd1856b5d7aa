#pragma once

#include <memory>
#include <string>

namespace odeheat {

/// Arithmetic expression in the variables x and t: numbers, pi, the functions
/// sin, cos, exp, the operators + - * / ^ (right-associative power) and
/// parentheses. Parse errors carry the offending column.
class Expression {
public:
    struct Node;

    static Expression parse(const std::string& text);

    double eval(double x, double t) const;
    const std::string& text() const { return text_; }

    // Move-only pimpl over the parsed tree.
    Expression(Expression&&) noexcept;
    Expression& operator=(Expression&&) noexcept;
    Expression(const Expression&);
    Expression& operator=(const Expression&);
    ~Expression();

private:
    explicit Expression(std::string text, std::shared_ptr<const Node> root);

    std::string text_;
    std::shared_ptr<const Node> root_;
};

} // namespace odeheat

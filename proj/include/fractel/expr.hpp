#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace fractel {

/// Immutable parsed arithmetic expression in the variables x and t.
///
/// Grammar, loosest to tightest: + -, * /, unary minus, ^ (right
/// associative), so "-x^2" is -(x^2). Identifiers: variables x and t, the
/// constant pi, and the function whitelist abs, cos, exp, gamma, log, sin,
/// sqrt, tan. A default-constructed Expression is empty and cannot be
/// evaluated.
class Expression {
public:
    Expression() = default;

    bool empty() const noexcept { return root_ == nullptr; }

    friend Expression parse(std::string_view text);
    friend double eval(const Expression& e, double x, double t);
    friend std::string to_string(const Expression& e);

    /// Opaque parse-tree node; defined in the implementation file.
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

private:
    explicit Expression(NodePtr root) : root_(std::move(root)) {}

    NodePtr root_;
};

/// Parses expression text. Throws ParseError with a 0-based byte offset on
/// syntax errors and unknown identifiers.
Expression parse(std::string_view text);

/// Evaluates at (x, t). IEEE semantics for overflow; domain violations (log
/// of a nonpositive value, gamma at a nonpositive integer, sqrt of a negative
/// value, a negative base raised to a non-integer power) throw EvalError
/// carrying (x, t).
double eval(const Expression& e, double x, double t);

/// Fully parenthesized text form; parse(to_string(e)) evaluates identically.
std::string to_string(const Expression& e);

}  // namespace fractel

#include "fractel/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

#include "fractel/errors.hpp"
#include "fractel/gammafn.hpp"

namespace fractel {

namespace {

constexpr double kPi = 3.14159265358979323846;

enum class Func { Abs, Cos, Exp, Gamma, Log, Sin, Sqrt, Tan };

constexpr std::array<std::string_view, 8> kFuncNames = {
    "abs", "cos", "exp", "gamma", "log", "sin", "sqrt", "tan"};

}  // namespace

struct Expression::Node {
    enum class Kind { Number, Variable, Pi, Unary, Binary, Call };

    Kind kind;
    double number = 0.0;
    char var = 0;
    char op = 0;
    Func func = Func::Abs;
    NodePtr lhs;
    NodePtr rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Number;
    n->number = v;
    return n;
}

NodePtr make_var(char var) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Variable;
    n->var = var;
    return n;
}

NodePtr make_pi() {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Pi;
    return n;
}

NodePtr make_unary(NodePtr operand) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Unary;
    n->op = '-';
    n->lhs = std::move(operand);
    return n;
}

NodePtr make_binary(char op, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Binary;
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_call(Func f, NodePtr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Call;
    n->func = f;
    n->lhs = std::move(arg);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr run() {
        NodePtr e = additive(0);
        skip_space();
        if (pos_ != text_.size()) {
            throw ParseError("unexpected trailing input", pos_);
        }
        return e;
    }

private:
    static constexpr int kMaxDepth = 256;

    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_space() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool peek_is(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool consume(char c) {
        if (peek_is(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void check_depth(int depth) {
        if (depth > kMaxDepth) {
            throw ParseError("expression too deeply nested", pos_);
        }
    }

    NodePtr additive(int depth) {
        check_depth(depth);
        NodePtr lhs = term(depth + 1);
        for (;;) {
            if (consume('+')) {
                lhs = make_binary('+', std::move(lhs), term(depth + 1));
            } else if (consume('-')) {
                lhs = make_binary('-', std::move(lhs), term(depth + 1));
            } else {
                return lhs;
            }
        }
    }

    NodePtr term(int depth) {
        check_depth(depth);
        NodePtr lhs = unary(depth + 1);
        for (;;) {
            if (consume('*')) {
                lhs = make_binary('*', std::move(lhs), unary(depth + 1));
            } else if (consume('/')) {
                lhs = make_binary('/', std::move(lhs), unary(depth + 1));
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary(int depth) {
        check_depth(depth);
        if (consume('-')) {
            return make_unary(unary(depth + 1));
        }
        return power(depth + 1);
    }

    NodePtr power(int depth) {
        check_depth(depth);
        NodePtr base = primary(depth + 1);
        if (consume('^')) {
            // Right associative; the exponent may start with a unary minus.
            return make_binary('^', std::move(base), unary(depth + 1));
        }
        return base;
    }

    NodePtr primary(int depth) {
        check_depth(depth);
        skip_space();
        if (pos_ >= text_.size()) {
            throw ParseError("expected expression", pos_);
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = additive(depth + 1);
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return identifier(depth);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    void expect(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
        ++pos_;
    }

    NodePtr number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
        }
        if (pos_ == start || (pos_ == start + 1 && text_[start] == '.')) {
            throw ParseError("malformed number", start);
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                ++pos_;
            }
            if (pos_ < text_.size() &&
                std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    ++pos_;
                }
            } else {
                pos_ = mark;  // 'e' belongs to something else; not our exponent
            }
        }
        const std::string tok(text_.substr(start, pos_ - start));
        return make_number(std::strtod(tok.c_str(), nullptr));
    }

    NodePtr identifier(int depth) {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") return make_var('x');
        if (name == "t") return make_var('t');
        if (name == "pi") return make_pi();
        for (std::size_t i = 0; i < kFuncNames.size(); ++i) {
            if (name == kFuncNames[i]) {
                expect('(');
                NodePtr arg = additive(depth + 1);
                expect(')');
                return make_call(static_cast<Func>(i), std::move(arg));
            }
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }
};

double eval_node(const Node& n, double x, double t) {
    switch (n.kind) {
        case Node::Kind::Number:
            return n.number;
        case Node::Kind::Variable:
            return n.var == 'x' ? x : t;
        case Node::Kind::Pi:
            return kPi;
        case Node::Kind::Unary:
            return -eval_node(*n.lhs, x, t);
        case Node::Kind::Binary: {
            const double a = eval_node(*n.lhs, x, t);
            const double b = eval_node(*n.rhs, x, t);
            switch (n.op) {
                case '+':
                    return a + b;
                case '-':
                    return a - b;
                case '*':
                    return a * b;
                case '/':
                    return a / b;
                default: {  // '^'
                    if (a < 0.0 && b != std::floor(b)) {
                        throw EvalError(
                            "negative base with non-integer exponent", x, t);
                    }
                    return std::pow(a, b);
                }
            }
        }
        case Node::Kind::Call: {
            const double a = eval_node(*n.lhs, x, t);
            switch (n.func) {
                case Func::Abs:
                    return std::abs(a);
                case Func::Cos:
                    return std::cos(a);
                case Func::Exp:
                    return std::exp(a);
                case Func::Gamma:
                    try {
                        return gamma_fn(a);
                    } catch (const DomainError&) {
                        throw EvalError("gamma at a nonpositive integer", x, t);
                    }
                case Func::Log:
                    if (a <= 0.0) {
                        throw EvalError("log of a nonpositive value", x, t);
                    }
                    return std::log(a);
                case Func::Sin:
                    return std::sin(a);
                case Func::Sqrt:
                    if (a < 0.0) {
                        throw EvalError("sqrt of a negative value", x, t);
                    }
                    return std::sqrt(a);
                default:  // Func::Tan
                    return std::tan(a);
            }
        }
    }
    throw EvalError("malformed expression node", x, t);
}

void print_node(const Node& n, std::string& out) {
    switch (n.kind) {
        case Node::Kind::Number: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", n.number);
            out += buf;
            return;
        }
        case Node::Kind::Variable:
            out += n.var;
            return;
        case Node::Kind::Pi:
            out += "pi";
            return;
        case Node::Kind::Unary:
            out += "(-";
            print_node(*n.lhs, out);
            out += ')';
            return;
        case Node::Kind::Binary:
            out += '(';
            print_node(*n.lhs, out);
            out += n.op;
            print_node(*n.rhs, out);
            out += ')';
            return;
        case Node::Kind::Call:
            out += kFuncNames[static_cast<std::size_t>(n.func)];
            out += '(';
            print_node(*n.lhs, out);
            out += ')';
            return;
    }
}

}  // namespace

Expression parse(std::string_view text) {
    return Expression(Parser(text).run());
}

double eval(const Expression& e, double x, double t) {
    if (!e.root_) {
        throw EvalError("empty expression", x, t);
    }
    return eval_node(*e.root_, x, t);
}

std::string to_string(const Expression& e) {
    if (!e.root_) {
        return "";
    }
    std::string out;
    print_node(*e.root_, out);
    return out;
}

}  // namespace fractel

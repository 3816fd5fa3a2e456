#include "sqz/expr.hpp"

#include "sqz/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

namespace sqz::expr {

enum class Op { number, var, neg, add, sub, mul, div, pow, func };
enum class Func { sin, cos, sinh, cosh, exp, sqrt };

struct Node {
    Op op = Op::number;
    double value = 0.0;
    Func func = Func::sin;
    std::unique_ptr<const Node> lhs;
    std::unique_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::unique_ptr<const Node>;

constexpr std::array<std::pair<std::string_view, Func>, 6> kFunctions{{
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"sinh", Func::sinh},
    {"cosh", Func::cosh},
    {"exp", Func::exp},
    {"sqrt", Func::sqrt},
}};

std::string_view func_name(Func f) {
    for (const auto& [name, fn] : kFunctions)
        if (fn == f) return name;
    return "?";
}

NodePtr make_number(double v) {
    auto n = std::make_unique<Node>();
    n->op = Op::number;
    n->value = v;
    return n;
}

NodePtr make_unary(Op op, NodePtr arg) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->lhs = std::move(arg);
    return n;
}

NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse_all() {
        skip_ws();
        if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
        auto root = expression();
        skip_ws();
        if (pos_ != src_.size()) {
            if (src_[pos_] == ')') throw ParseError("unbalanced ')'", pos_);
            throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
        }
        return root;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr expression() {
        auto lhs = term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            lhs = make_binary(c == '+' ? Op::add : Op::sub, std::move(lhs), term());
        }
        return lhs;
    }

    NodePtr term() {
        auto lhs = unary();
        for (char c = peek(); c == '*' || c == '/'; c = peek()) {
            ++pos_;
            lhs = make_binary(c == '*' ? Op::mul : Op::div, std::move(lhs), unary());
        }
        return lhs;
    }

    NodePtr unary() {
        if (peek() == '-') {
            ++pos_;
            return make_unary(Op::neg, unary());
        }
        return power();
    }

    NodePtr power() {
        auto base = atom();
        if (peek() == '^') {
            ++pos_;
            return make_binary(Op::pow, std::move(base), unary());
        }
        return base;
    }

    NodePtr atom() {
        const char c = peek();
        const std::size_t start = pos_;
        if (c == '\0') throw ParseError("unexpected end of input", pos_);
        if (c == '(') {
            ++pos_;
            auto inner = expression();
            if (peek() != ')') throw ParseError("missing ')' for '(' opened", start);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            const auto ident = src_.substr(start, pos_ - start);
            if (ident == "t") {
                auto n = std::make_unique<Node>();
                n->op = Op::var;
                return n;
            }
            for (const auto& [name, fn] : kFunctions) {
                if (ident != name) continue;
                if (peek() != '(') throw ParseError("expected '(' after " + std::string(ident), pos_);
                const std::size_t open = pos_++;
                auto arg = expression();
                if (peek() != ')') throw ParseError("missing ')' for '(' opened", open);
                ++pos_;
                auto n = std::make_unique<Node>();
                n->op = Op::func;
                n->func = fn;
                n->lhs = std::move(arg);
                return n;
            }
            throw ParseError("unknown identifier '" + std::string(ident) + "'", start);
        }
        if (c == ')') throw ParseError("unbalanced ')'", pos_);
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    NodePtr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t mantissa = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) throw ParseError("malformed number", start);
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            const std::size_t exp_pos = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) throw ParseError("malformed exponent", exp_pos);
        }
        double v = 0.0;
        const auto* first = src_.data() + start;
        const auto* last = src_.data() + pos_;
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr != last) throw ParseError("malformed number", start);
        return make_number(v);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

double evaluate(const Node& n, double t) {
    switch (n.op) {
    case Op::number: return n.value;
    case Op::var: return t;
    case Op::neg: return -evaluate(*n.lhs, t);
    case Op::add: return evaluate(*n.lhs, t) + evaluate(*n.rhs, t);
    case Op::sub: return evaluate(*n.lhs, t) - evaluate(*n.rhs, t);
    case Op::mul: return evaluate(*n.lhs, t) * evaluate(*n.rhs, t);
    case Op::div: {
        const double num = evaluate(*n.lhs, t);
        const double den = evaluate(*n.rhs, t);
        if (den == 0.0) throw EvalError("division by zero", t);
        return num / den;
    }
    case Op::pow: return std::pow(evaluate(*n.lhs, t), evaluate(*n.rhs, t));
    case Op::func: {
        const double a = evaluate(*n.lhs, t);
        switch (n.func) {
        case Func::sin: return std::sin(a);
        case Func::cos: return std::cos(a);
        case Func::sinh: return std::sinh(a);
        case Func::cosh: return std::cosh(a);
        case Func::exp: return std::exp(a);
        case Func::sqrt:
            if (a < 0.0) throw EvalError("sqrt of negative argument", t);
            return std::sqrt(a);
        }
    }
    }
    return 0.0;
}

bool references_t(const Node& n) {
    if (n.op == Op::var) return true;
    return (n.lhs && references_t(*n.lhs)) || (n.rhs && references_t(*n.rhs));
}

void print(const Node& n, std::string& out) {
    switch (n.op) {
    case Op::number: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", n.value);
        out += buf;
        return;
    }
    case Op::var: out += 't'; return;
    case Op::neg:
        out += "(-";
        print(*n.lhs, out);
        out += ')';
        return;
    case Op::func:
        out += func_name(n.func);
        out += '(';
        print(*n.lhs, out);
        out += ')';
        return;
    default: break;
    }
    static constexpr std::string_view symbols = "+-*/^";
    const char sym = symbols[static_cast<int>(n.op) - static_cast<int>(Op::add)];
    out += '(';
    print(*n.lhs, out);
    out += sym;
    print(*n.rhs, out);
    out += ')';
}

bool same(const Node& a, const Node& b) {
    if (a.op != b.op) return false;
    if (a.op == Op::number && a.value != b.value) return false;
    if (a.op == Op::func && a.func != b.func) return false;
    if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
    if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
    return (!a.lhs || same(*a.lhs, *b.lhs)) && (!a.rhs || same(*a.rhs, *b.rhs));
}

} // namespace

CoefficientFn::CoefficientFn() : root_(make_number(0.0)) {}

CoefficientFn::CoefficientFn(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

CoefficientFn CoefficientFn::constant(double value) { return CoefficientFn(make_number(value)); }

double CoefficientFn::eval(double t) const { return evaluate(*root_, t); }

std::optional<double> CoefficientFn::constant_value() const {
    if (references_t(*root_)) return std::nullopt;
    return evaluate(*root_, 0.0);
}

std::string CoefficientFn::to_string() const {
    std::string out;
    print(*root_, out);
    return out;
}

bool CoefficientFn::same_tree(const CoefficientFn& other) const { return same(*root_, *other.root_); }

CoefficientFn parse(std::string_view source) {
    Parser p(source);
    return CoefficientFn(std::shared_ptr<const Node>(p.parse_all()));
}

} // namespace sqz::expr

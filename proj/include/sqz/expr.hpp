#pragma once

// Coefficient expressions g(t) for custom systems.
//
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | 't' | func '(' expr ')' | '(' expr ')'
//   func   := sin | cos | sinh | cosh | exp | sqrt
//
// '^' is right-associative and binds tighter than unary minus, so
// "-t^2" is -(t^2) and "2^3^2" is 2^9.

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace sqz::expr {

struct Node;

class CoefficientFn {
public:
    // Constant 0.
    CoefficientFn();

    static CoefficientFn constant(double value);

    double operator()(double t) const { return eval(t); }
    double eval(double t) const;

    // Value when the expression does not reference t.
    std::optional<double> constant_value() const;

    // Fully parenthesised form; parse(to_string()) yields an identical tree.
    std::string to_string() const;

    bool same_tree(const CoefficientFn& other) const;

    const Node& root() const { return *root_; }

private:
    explicit CoefficientFn(std::shared_ptr<const Node> root);
    friend CoefficientFn parse(std::string_view source);

    std::shared_ptr<const Node> root_;
};

CoefficientFn parse(std::string_view source);

inline double eval(const CoefficientFn& fn, double t) { return fn.eval(t); }

} // namespace sqz::expr

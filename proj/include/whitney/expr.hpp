#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "whitney/jet.hpp"

namespace whitney {

// Immutable expression tree in the single variable t.
class Expr {
public:
    enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Exp, Log, Sin, Cos, Sqrt };

    struct Node {
        Kind kind;
        double value = 0.0;  // Constant
        int exponent = 0;    // Pow
        std::shared_ptr<const Node> lhs, rhs;
    };

    Expr();  // the constant 0
    explicit Expr(std::shared_ptr<const Node> root, std::string source = {});

    static Expr constant(double v);
    static Expr variable();

    double eval(double t) const;
    Jet<double> jet(double t, std::size_t k) const;

    // True when the tree is the literal constant 0.
    bool is_zero_literal() const;
    // Constant value if the tree has no variable.
    bool is_constant(double* value = nullptr) const;

    // Normalized prefix form, e.g. add(sin(t),1).
    std::string tree_string() const;
    // Original text when parsed, otherwise an infix rendering.
    const std::string& source() const { return source_; }

    const Node& root() const { return *root_; }

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
};

// expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
// factor := base ('^' integer)?; base := number | 't' | func '(' expr ')' | '(' expr ')' | '-' factor
Expr parse(std::string_view text);

inline Jet<double> jet_eval(const Expr& e, double t, std::size_t k) { return e.jet(t, k); }

}  // namespace whitney

#pragma once

// Coefficient expression language.
//
// Grammar (EBNF):
//
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { ("*" | "/") unary } ;
//   unary   = "-" unary | power ;
//   power   = primary { "^" signed } ;
//   signed  = "-" signed | primary ;
//   primary = number | ident | ident "(" expr { "," expr } ")" | "(" expr ")" ;
//   ident   = "t" | "x1" | "x2" | "x3" | "pi" | function name ;
//
// Functions: exp, sin, cos, abs, sqrt, step (1 if arg >= 0 else 0), min, max.
// All binary operators, including "^", associate to the left, so "2^3^2" is
// (2^3)^2. Unary minus binds weaker than "^": "-x1^2" is -(x1^2).

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace schauder {

enum class ExprKind : std::uint8_t {
    Literal,
    Variable,
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Exp,
    Sin,
    Cos,
    Abs,
    Sqrt,
    Step,
    Min,
    Max,
};

/// Variable slot: 0 is t, 1..3 are x1..x3.
using VarIndex = int;

/// Immutable expression tree with value semantics (nodes are shared).
class Expr {
public:
    struct Node;

    Expr();  // literal 0

    static Expr literal(double v);
    static Expr variable(VarIndex i);
    static Expr time() { return variable(0); }
    static Expr coord(int axis) { return variable(axis + 1); }
    static Expr unary(ExprKind k, Expr a);
    static Expr binary(ExprKind k, Expr a, Expr b);

    ExprKind kind() const;
    double value() const;          // Literal only
    VarIndex var() const;          // Variable only
    std::span<const Expr> args() const;

    /// Evaluate at time t and point x (x.size() >= highest coordinate used).
    /// Throws DomainError on division by zero, sqrt of a negative, or any
    /// non-finite intermediate.
    double eval(double t, std::span<const double> x) const;

    bool uses_time() const;
    bool uses_space() const;
    /// Highest spatial axis referenced (0 when none, 1 for x1, ...).
    int max_axis() const;
    bool is_literal() const { return kind() == ExprKind::Literal; }

    /// Print with minimal parentheses; parse(print(e)) reproduces e.
    std::string str() const;

    friend bool operator==(const Expr& a, const Expr& b);

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Expr::Node {
    ExprKind kind;
    double value = 0.0;
    VarIndex var = 0;
    std::vector<Expr> args;
    bool has_time = false;
    int max_axis = 0;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr min(const Expr& a, const Expr& b);
Expr max(const Expr& a, const Expr& b);
Expr exp(const Expr& a);

/// Parse expression text. Throws ParseError with the byte offset.
Expr parse_expr(std::string_view text);

/// Convenience wrapper over Expr::eval.
inline double eval_field(const Expr& e, double t, std::span<const double> x) {
    return e.eval(t, x);
}

}  // namespace schauder

#include "schauder/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

#include "schauder/errors.hpp"

namespace schauder {

namespace {

Expr::Node make_node(ExprKind kind, std::vector<Expr> args) {
    Expr::Node n;
    n.kind = kind;
    for (const auto& a : args) {
        n.has_time = n.has_time || a.uses_time();
        n.max_axis = std::max(n.max_axis, a.max_axis());
    }
    n.args = std::move(args);
    return n;
}

int arity(ExprKind k) {
    switch (k) {
        case ExprKind::Literal:
        case ExprKind::Variable:
            return 0;
        case ExprKind::Neg:
        case ExprKind::Exp:
        case ExprKind::Sin:
        case ExprKind::Cos:
        case ExprKind::Abs:
        case ExprKind::Sqrt:
        case ExprKind::Step:
            return 1;
        default:
            return 2;
    }
}

const char* function_name(ExprKind k) {
    switch (k) {
        case ExprKind::Exp: return "exp";
        case ExprKind::Sin: return "sin";
        case ExprKind::Cos: return "cos";
        case ExprKind::Abs: return "abs";
        case ExprKind::Sqrt: return "sqrt";
        case ExprKind::Step: return "step";
        case ExprKind::Min: return "min";
        case ExprKind::Max: return "max";
        default: return nullptr;
    }
}

}  // namespace

Expr::Expr() : Expr(literal(0.0)) {}

Expr Expr::literal(double v) {
    Node n;
    n.kind = ExprKind::Literal;
    n.value = v;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::variable(VarIndex i) {
    if (i < 0 || i > 3) throw Error("variable index out of range");
    Node n;
    n.kind = ExprKind::Variable;
    n.var = i;
    n.has_time = (i == 0);
    n.max_axis = i;  // 0 for t
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::unary(ExprKind k, Expr a) {
    if (arity(k) != 1) throw Error("not a unary expression kind");
    if (k == ExprKind::Neg && a.is_literal()) return literal(-a.value());
    return Expr(std::make_shared<const Node>(make_node(k, {std::move(a)})));
}

Expr Expr::binary(ExprKind k, Expr a, Expr b) {
    if (arity(k) != 2) throw Error("not a binary expression kind");
    return Expr(std::make_shared<const Node>(make_node(k, {std::move(a), std::move(b)})));
}

ExprKind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
VarIndex Expr::var() const { return node_->var; }
std::span<const Expr> Expr::args() const { return node_->args; }
bool Expr::uses_time() const { return node_->has_time; }
bool Expr::uses_space() const { return node_->max_axis > 0; }
int Expr::max_axis() const { return node_->max_axis; }

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case ExprKind::Literal:
            // bitwise comparison keeps -0 and 0 apart, which matters for printing
            return std::signbit(a.value()) == std::signbit(b.value()) && a.value() == b.value();
        case ExprKind::Variable:
            return a.var() == b.var();
        default:
            break;
    }
    auto aa = a.args();
    auto bb = b.args();
    if (aa.size() != bb.size()) return false;
    for (std::size_t i = 0; i < aa.size(); ++i)
        if (!(aa[i] == bb[i])) return false;
    return true;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(ExprKind::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(ExprKind::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(ExprKind::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(ExprKind::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::unary(ExprKind::Neg, a); }
Expr min(const Expr& a, const Expr& b) { return Expr::binary(ExprKind::Min, a, b); }
Expr max(const Expr& a, const Expr& b) { return Expr::binary(ExprKind::Max, a, b); }
Expr exp(const Expr& a) { return Expr::unary(ExprKind::Exp, a); }

// ---------------------------------------------------------------- evaluation

namespace {

double checked(double v, const Expr& node, const char* what) {
    if (!std::isfinite(v)) throw DomainError(node.str(), what);
    return v;
}

double eval_node(const Expr& e, double t, std::span<const double> x) {
    switch (e.kind()) {
        case ExprKind::Literal:
            return e.value();
        case ExprKind::Variable: {
            if (e.var() == 0) return t;
            auto i = static_cast<std::size_t>(e.var() - 1);
            if (i >= x.size()) throw Error("expression uses x" + std::to_string(i + 1) +
                                           " but the point has dimension " + std::to_string(x.size()));
            return x[i];
        }
        default:
            break;
    }
    auto a = e.args();
    const double u = eval_node(a[0], t, x);
    switch (e.kind()) {
        case ExprKind::Neg: return -u;
        case ExprKind::Exp: return checked(std::exp(u), e, "exp overflow");
        case ExprKind::Sin: return std::sin(u);
        case ExprKind::Cos: return std::cos(u);
        case ExprKind::Abs: return std::abs(u);
        case ExprKind::Sqrt:
            if (u < 0.0) throw DomainError(e.str(), "sqrt of negative number");
            return std::sqrt(u);
        case ExprKind::Step: return u >= 0.0 ? 1.0 : 0.0;
        default:
            break;
    }
    const double v = eval_node(a[1], t, x);
    switch (e.kind()) {
        case ExprKind::Add: return checked(u + v, e, "non-finite sum");
        case ExprKind::Sub: return checked(u - v, e, "non-finite difference");
        case ExprKind::Mul: return checked(u * v, e, "non-finite product");
        case ExprKind::Div:
            if (v == 0.0) throw DomainError(e.str(), "division by zero");
            return checked(u / v, e, "non-finite quotient");
        case ExprKind::Pow: return checked(std::pow(u, v), e, "non-finite power");
        case ExprKind::Min: return std::min(u, v);
        case ExprKind::Max: return std::max(u, v);
        default:
            throw Error("corrupt expression node");
    }
}

}  // namespace

double Expr::eval(double t, std::span<const double> x) const { return eval_node(*this, t, x); }

// ---------------------------------------------------------------- printing

namespace {

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecNeg = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

int precedence(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::Literal:
            return std::signbit(e.value()) ? kPrecNeg : kPrecAtom;
        case ExprKind::Add:
        case ExprKind::Sub:
            return kPrecAdd;
        case ExprKind::Mul:
        case ExprKind::Div:
            return kPrecMul;
        case ExprKind::Neg:
            return kPrecNeg;
        case ExprKind::Pow:
            return kPrecPow;
        default:
            return kPrecAtom;
    }
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw Error("cannot format literal");
    return std::string(buf.data(), end);
}

// True when `e` can stand as an exponent without parentheses: a primary or a
// chain of unary minus over a primary.
bool signed_primary(const Expr& e) {
    if (e.kind() == ExprKind::Neg) return signed_primary(e.args()[0]);
    return precedence(e) >= kPrecNeg && e.kind() != ExprKind::Pow;
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print(e, out);
    if (wrap) out += ')';
}

void print(const Expr& e, std::string& out) {
    switch (e.kind()) {
        case ExprKind::Literal:
            out += format_number(e.value());
            return;
        case ExprKind::Variable:
            out += e.var() == 0 ? std::string("t") : "x" + std::to_string(e.var());
            return;
        case ExprKind::Neg:
            out += '-';
            print_wrapped(e.args()[0], precedence(e.args()[0]) < kPrecNeg, out);
            return;
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Div: {
            const int p = precedence(e);
            const char op = e.kind() == ExprKind::Add   ? '+'
                            : e.kind() == ExprKind::Sub ? '-'
                            : e.kind() == ExprKind::Mul ? '*'
                                                        : '/';
            print_wrapped(e.args()[0], precedence(e.args()[0]) < p, out);
            out += op;
            print_wrapped(e.args()[1], precedence(e.args()[1]) <= p, out);
            return;
        }
        case ExprKind::Pow: {
            const Expr& base = e.args()[0];
            const Expr& expo = e.args()[1];
            print_wrapped(base, precedence(base) < kPrecPow, out);
            out += '^';
            print_wrapped(expo, !signed_primary(expo), out);
            return;
        }
        default: {
            out += function_name(e.kind());
            out += '(';
            auto a = e.args();
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (i) out += ',';
                print(a[i], out);
            }
            out += ')';
            return;
        }
    }
}

}  // namespace

std::string Expr::str() const {
    std::string out;
    print(*this, out);
    return out;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    Expr run() {
        skip_ws();
        if (pos_ == s_.size()) throw ParseError(pos_, "empty expression");
        Expr e = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError(pos_, "unexpected character '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) {
        if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input, " + what);
        throw ParseError(pos_, "unexpected '" + std::string(1, s_[pos_]) + "', " + what);
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            if (accept('+')) lhs = lhs + term();
            else if (accept('-')) lhs = lhs - term();
            else return lhs;
        }
    }

    Expr term() {
        Expr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = lhs * unary();
            else if (accept('/')) lhs = lhs / unary();
            else return lhs;
        }
    }

    Expr unary() {
        if (accept('-')) return -unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        while (accept('^')) base = Expr::binary(ExprKind::Pow, base, signed_operand());
        return base;
    }

    Expr signed_operand() {
        if (accept('-')) return -signed_operand();
        return primary();
    }

    Expr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected an operand");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if ((c >= '0' && c <= '9') || c == '.') return number();
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') return identifier();
        fail("expected an operand");
    }

    Expr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_, ++n;
            return n;
        };
        std::size_t nd = digits();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            nd += digits();
        }
        if (nd == 0) throw ParseError(start, "malformed number");
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (digits() == 0) pos_ = save;  // "2e" is 2 followed by identifier e
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (ec != std::errc{} || ptr != s_.data() + pos_ || !std::isfinite(v))
            throw ParseError(start, "malformed number");
        return Expr::literal(v);
    }

    Expr identifier() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() &&
               ((s_[pos_] >= 'a' && s_[pos_] <= 'z') || (s_[pos_] >= 'A' && s_[pos_] <= 'Z') ||
                (s_[pos_] >= '0' && s_[pos_] <= '9') || s_[pos_] == '_'))
            ++pos_;
        const std::string_view name = s_.substr(start, pos_ - start);

        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '(') {
            static constexpr std::array<ExprKind, 8> fns{ExprKind::Exp, ExprKind::Sin,  ExprKind::Cos,
                                                         ExprKind::Abs, ExprKind::Sqrt, ExprKind::Step,
                                                         ExprKind::Min, ExprKind::Max};
            for (ExprKind k : fns) {
                if (name != function_name(k)) continue;
                ++pos_;
                std::vector<Expr> args;
                args.push_back(expr());
                while (accept(',')) args.push_back(expr());
                if (!accept(')')) fail("expected ')' or ','");
                if (static_cast<int>(args.size()) != arity(k))
                    throw ParseError(start, "wrong arity for " + std::string(name) + ": expected " +
                                                std::to_string(arity(k)) + ", got " +
                                                std::to_string(args.size()));
                return arity(k) == 1 ? Expr::unary(k, args[0]) : Expr::binary(k, args[0], args[1]);
            }
            throw ParseError(start, "unknown function '" + std::string(name) + "'");
        }

        if (name == "t") return Expr::time();
        if (name == "x1") return Expr::coord(0);
        if (name == "x2") return Expr::coord(1);
        if (name == "x3") return Expr::coord(2);
        if (name == "pi") return Expr::literal(std::numbers::pi);
        if (name == "exp" || name == "sin" || name == "cos" || name == "abs" || name == "sqrt" ||
            name == "step" || name == "min" || name == "max")
            throw ParseError(start, "wrong arity for " + std::string(name) + ": missing argument list");
        throw ParseError(start, "unknown identifier '" + std::string(name) + "'");
    }
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).run(); }

}  // namespace schauder

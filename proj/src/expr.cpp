#include "whitney/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "whitney/errors.hpp"

namespace whitney {

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Expr::Kind k, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_constant(double v) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Kind::Constant;
    n->value = v;
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    NodePtr parse_all() {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return e;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) lhs = make(Expr::Kind::Add, lhs, term());
            else if (accept('-')) lhs = make(Expr::Kind::Sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            if (accept('*')) lhs = make(Expr::Kind::Mul, lhs, factor());
            else if (accept('/')) lhs = make(Expr::Kind::Div, lhs, factor());
            else return lhs;
        }
    }

    NodePtr factor() {
        if (accept('-')) return make(Expr::Kind::Neg, factor());
        NodePtr b = base();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            bool neg = false;
            if (pos_ < s_.size() && s_[pos_] == '-') {
                neg = true;
                ++pos_;
            }
            std::size_t digits = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == digits) throw ParseError("expected integer exponent", start);
            int p = 0;
            auto [ptr, ec] = std::from_chars(s_.data() + digits, s_.data() + pos_, p);
            if (ec != std::errc()) throw ParseError("exponent out of range", start);
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Kind::Pow;
            n->exponent = neg ? -p : p;
            n->lhs = b;
            return n;
        }
        return b;
    }

    NodePtr base() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string_view id = s_.substr(start, pos_ - start);
            if (id == "t") return make(Expr::Kind::Variable);
            Expr::Kind k;
            if (id == "exp") k = Expr::Kind::Exp;
            else if (id == "log") k = Expr::Kind::Log;
            else if (id == "sin") k = Expr::Kind::Sin;
            else if (id == "cos") k = Expr::Kind::Cos;
            else if (id == "sqrt") k = Expr::Kind::Sqrt;
            else throw ParseError("unknown identifier '" + std::string(id) + "'", start);
            expect('(');
            NodePtr arg = expr();
            expect(')');
            return make(k, arg);
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    NodePtr number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            std::size_t digits = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == digits) pos_ = save;  // not an exponent, leave 'e' to the caller
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (ec != std::errc() || ptr != s_.data() + pos_) throw ParseError("malformed number", start);
        return make_constant(v);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

double eval_node(const Expr::Node& n, double t) {
    using K = Expr::Kind;
    switch (n.kind) {
        case K::Constant: return n.value;
        case K::Variable: return t;
        case K::Add: return eval_node(*n.lhs, t) + eval_node(*n.rhs, t);
        case K::Sub: return eval_node(*n.lhs, t) - eval_node(*n.rhs, t);
        case K::Mul: return eval_node(*n.lhs, t) * eval_node(*n.rhs, t);
        case K::Div: {
            double d = eval_node(*n.rhs, t);
            if (d == 0.0) throw DomainError("division by zero at t=" + std::to_string(t));
            return eval_node(*n.lhs, t) / d;
        }
        case K::Pow: {
            double b = eval_node(*n.lhs, t);
            if (n.exponent < 0 && b == 0.0) throw DomainError("negative power of zero");
            return std::pow(b, n.exponent);
        }
        case K::Neg: return -eval_node(*n.lhs, t);
        case K::Exp: return std::exp(eval_node(*n.lhs, t));
        case K::Log: {
            double a = eval_node(*n.lhs, t);
            if (!(a > 0.0)) throw DomainError("log of nonpositive value at t=" + std::to_string(t));
            return std::log(a);
        }
        case K::Sin: return std::sin(eval_node(*n.lhs, t));
        case K::Cos: return std::cos(eval_node(*n.lhs, t));
        case K::Sqrt: {
            double a = eval_node(*n.lhs, t);
            if (!(a > 0.0)) throw DomainError("sqrt of nonpositive value at t=" + std::to_string(t));
            return std::sqrt(a);
        }
    }
    return 0.0;
}

Jet<double> jet_node(const Expr::Node& n, double t, std::size_t k) {
    using K = Expr::Kind;
    switch (n.kind) {
        case K::Constant: return Jet<double>::constant(t, k, n.value);
        case K::Variable: return Jet<double>::variable(t, k);
        case K::Add: return jet_node(*n.lhs, t, k) + jet_node(*n.rhs, t, k);
        case K::Sub: return jet_node(*n.lhs, t, k) - jet_node(*n.rhs, t, k);
        case K::Mul: return jet_node(*n.lhs, t, k) * jet_node(*n.rhs, t, k);
        case K::Div: return jet_node(*n.lhs, t, k) / jet_node(*n.rhs, t, k);
        case K::Pow: return pow(jet_node(*n.lhs, t, k), n.exponent);
        case K::Neg: return -jet_node(*n.lhs, t, k);
        case K::Exp: return exp(jet_node(*n.lhs, t, k));
        case K::Log: return log(jet_node(*n.lhs, t, k));
        case K::Sin: return sin(jet_node(*n.lhs, t, k));
        case K::Cos: return cos(jet_node(*n.lhs, t, k));
        case K::Sqrt: return sqrt(jet_node(*n.lhs, t, k));
    }
    return {};
}

std::string number_text(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void tree_text(const Expr::Node& n, std::ostream& os) {
    using K = Expr::Kind;
    auto bin = [&](const char* name) {
        os << name << '(';
        tree_text(*n.lhs, os);
        os << ',';
        tree_text(*n.rhs, os);
        os << ')';
    };
    auto un = [&](const char* name) {
        os << name << '(';
        tree_text(*n.lhs, os);
        os << ')';
    };
    switch (n.kind) {
        case K::Constant: os << number_text(n.value); break;
        case K::Variable: os << 't'; break;
        case K::Add: bin("add"); break;
        case K::Sub: bin("sub"); break;
        case K::Mul: bin("mul"); break;
        case K::Div: bin("div"); break;
        case K::Pow:
            os << "pow(";
            tree_text(*n.lhs, os);
            os << ',' << n.exponent << ')';
            break;
        case K::Neg: un("neg"); break;
        case K::Exp: un("exp"); break;
        case K::Log: un("log"); break;
        case K::Sin: un("sin"); break;
        case K::Cos: un("cos"); break;
        case K::Sqrt: un("sqrt"); break;
    }
}

void infix_text(const Expr::Node& n, std::ostream& os) {
    using K = Expr::Kind;
    auto bin = [&](char op) {
        os << '(';
        infix_text(*n.lhs, os);
        os << op;
        infix_text(*n.rhs, os);
        os << ')';
    };
    auto un = [&](const char* name) {
        os << name << '(';
        infix_text(*n.lhs, os);
        os << ')';
    };
    switch (n.kind) {
        case K::Constant: os << '(' << number_text(n.value) << ')'; break;
        case K::Variable: os << 't'; break;
        case K::Add: bin('+'); break;
        case K::Sub: bin('-'); break;
        case K::Mul: bin('*'); break;
        case K::Div: bin('/'); break;
        case K::Pow:
            os << '(';
            infix_text(*n.lhs, os);
            os << ")^" << n.exponent;
            break;
        case K::Neg: os << "(-"; infix_text(*n.lhs, os); os << ')'; break;
        case K::Exp: un("exp"); break;
        case K::Log: un("log"); break;
        case K::Sin: un("sin"); break;
        case K::Cos: un("cos"); break;
        case K::Sqrt: un("sqrt"); break;
    }
}

bool has_variable(const Expr::Node& n) {
    if (n.kind == Expr::Kind::Variable) return true;
    if (n.lhs && has_variable(*n.lhs)) return true;
    if (n.rhs && has_variable(*n.rhs)) return true;
    return false;
}

}  // namespace

Expr::Expr() : Expr(make_constant(0.0), "0") {}

Expr::Expr(std::shared_ptr<const Node> root, std::string source) : root_(std::move(root)), source_(std::move(source)) {
    if (source_.empty()) {
        std::ostringstream os;
        infix_text(*root_, os);
        source_ = os.str();
    }
}

Expr Expr::constant(double v) { return Expr(make_constant(v)); }
Expr Expr::variable() { return Expr(make(Kind::Variable), "t"); }

double Expr::eval(double t) const { return eval_node(*root_, t); }

Jet<double> Expr::jet(double t, std::size_t k) const { return jet_node(*root_, t, k); }

bool Expr::is_zero_literal() const { return root_->kind == Kind::Constant && root_->value == 0.0; }

bool Expr::is_constant(double* value) const {
    if (has_variable(*root_)) return false;
    if (value) *value = eval(0.0);
    return true;
}

std::string Expr::tree_string() const {
    std::ostringstream os;
    tree_text(*root_, os);
    return os.str();
}

Expr parse(std::string_view text) {
    Parser p(text);
    return Expr(p.parse_all(), std::string(text));
}

}  // namespace whitney

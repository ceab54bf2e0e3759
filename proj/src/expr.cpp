#include "lipfix/expr.hpp"

#include "lipfix/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

namespace lipfix {

struct Expr::Node {
    Kind kind;
    double value = 0.0;
    BinaryOp op = BinaryOp::Add;
    Function fn = Function::Sqrt;
    std::vector<Expr> children;
};

namespace {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string at_x(double x) { return " at x=" + format_number(x); }

[[noreturn]] void domain_error(const std::string& what, double x) {
    throw Error(ErrorKind::DomainError, what + at_x(x), x);
}

}  // namespace

std::string_view function_name(Expr::Function fn) noexcept {
    switch (fn) {
        case Expr::Function::Sqrt: return "sqrt";
        case Expr::Function::Log: return "log";
        case Expr::Function::Exp: return "exp";
        case Expr::Function::Abs: return "abs";
        case Expr::Function::Min: return "min";
        case Expr::Function::Max: return "max";
    }
    return "?";
}

Expr Expr::number(double value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Number;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::variable() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    return Expr(std::move(n));
}

Expr Expr::negate(Expr child) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Negate;
    n->children.push_back(std::move(child));
    return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Binary;
    n->op = op;
    n->children.push_back(std::move(lhs));
    n->children.push_back(std::move(rhs));
    return Expr(std::move(n));
}

Expr Expr::call(Function fn, std::vector<Expr> args) {
    const std::size_t arity = (fn == Function::Min || fn == Function::Max) ? 2 : 1;
    if (args.size() != arity) {
        throw Error(ErrorKind::InvalidArgument, std::string(function_name(fn)) + " takes " +
                                                    std::to_string(arity) + " argument(s), got " +
                                                    std::to_string(args.size()));
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->fn = fn;
    n->children = std::move(args);
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::number_value() const { return node_->value; }
Expr::BinaryOp Expr::binary_op() const { return node_->op; }
Expr::Function Expr::function() const { return node_->fn; }
std::span<const Expr> Expr::children() const noexcept { return node_->children; }

bool Expr::is_constant_zero() const noexcept {
    return node_->kind == Kind::Number && node_->value == 0.0;
}

double Expr::eval(double x) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Number: return n.value;
        case Kind::Variable: return x;
        case Kind::Negate: return -n.children[0].eval(x);
        case Kind::Binary: {
            const double a = n.children[0].eval(x);
            const double b = n.children[1].eval(x);
            double r = 0.0;
            switch (n.op) {
                case BinaryOp::Add: r = a + b; break;
                case BinaryOp::Sub: r = a - b; break;
                case BinaryOp::Mul: r = a * b; break;
                case BinaryOp::Div:
                    if (b == 0.0) {
                        throw Error(ErrorKind::DivideByZero, "zero denominator" + at_x(x), x);
                    }
                    r = a / b;
                    break;
                case BinaryOp::Pow:
                    if (a < 0.0 && std::trunc(b) != b) {
                        domain_error("negative base " + format_number(a) + " raised to non-integer power", x);
                    }
                    if (a == 0.0 && b < 0.0) {
                        throw Error(ErrorKind::DivideByZero, "zero raised to negative power" + at_x(x), x);
                    }
                    r = std::pow(a, b);
                    break;
            }
            if (!std::isfinite(r)) domain_error("non-finite result", x);
            return r;
        }
        case Kind::Call: {
            const double a = n.children[0].eval(x);
            double r = 0.0;
            switch (n.fn) {
                case Function::Sqrt:
                    if (a < 0.0) domain_error("sqrt of negative argument " + format_number(a), x);
                    r = std::sqrt(a);
                    break;
                case Function::Log:
                    if (a <= 0.0) domain_error("log of non-positive argument " + format_number(a), x);
                    r = std::log(a);
                    break;
                case Function::Exp: r = std::exp(a); break;
                case Function::Abs: r = std::fabs(a); break;
                case Function::Min: r = std::fmin(a, n.children[1].eval(x)); break;
                case Function::Max: r = std::fmax(a, n.children[1].eval(x)); break;
            }
            if (!std::isfinite(r)) domain_error("non-finite result", x);
            return r;
        }
    }
    return 0.0;
}

std::string Expr::serialize() const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Number:
            return n.value < 0.0 || std::signbit(n.value) ? "(" + format_number(n.value) + ")"
                                                          : format_number(n.value);
        case Kind::Variable: return "x";
        case Kind::Negate: return "(-" + n.children[0].serialize() + ")";
        case Kind::Binary: {
            static constexpr char ops[] = {'+', '-', '*', '/', '^'};
            return "(" + n.children[0].serialize() + ops[static_cast<int>(n.op)] +
                   n.children[1].serialize() + ")";
        }
        case Kind::Call: {
            std::string s(function_name(n.fn));
            s += '(';
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) s += ',';
                s += n.children[i].serialize();
            }
            return s + ')';
        }
    }
    return {};
}

std::string Expr::source() const { return source_ ? *source_ : serialize(); }

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { End, Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma };

std::string_view describe(Tok t) {
    switch (t) {
        case Tok::End: return "end of input";
        case Tok::Number: return "number";
        case Tok::Ident: return "identifier";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::Caret: return "'^'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
    }
    return "?";
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) { advance(); }

    Expr parse_all() {
        Expr e = expr();
        if (tok_ != Tok::End) fail("expected operator or end of input, found " + std::string(describe(tok_)));
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    Tok tok_ = Tok::End;
    std::size_t tok_start_ = 0;
    double number_ = 0.0;
    std::string_view ident_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::SyntaxError, msg + " at offset " + std::to_string(tok_start_),
                    static_cast<double>(tok_start_));
    }

    void advance() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                      src_[pos_] == '\r')) {
            ++pos_;
        }
        tok_start_ = pos_;
        if (pos_ >= src_.size()) {
            tok_ = Tok::End;
            return;
        }
        const char c = src_[pos_];
        // U+2212 MINUS SIGN is accepted as '-'.
        if (src_.substr(pos_, 3) == "\xE2\x88\x92") {
            pos_ += 3;
            tok_ = Tok::Minus;
            return;
        }
        switch (c) {
            case '+': ++pos_; tok_ = Tok::Plus; return;
            case '-': ++pos_; tok_ = Tok::Minus; return;
            case '*': ++pos_; tok_ = Tok::Star; return;
            case '/': ++pos_; tok_ = Tok::Slash; return;
            case '^': ++pos_; tok_ = Tok::Caret; return;
            case '(': ++pos_; tok_ = Tok::LParen; return;
            case ')': ++pos_; tok_ = Tok::RParen; return;
            case ',': ++pos_; tok_ = Tok::Comma; return;
            default: break;
        }
        const auto is_digit = [](char ch) { return ch >= '0' && ch <= '9'; };
        if (is_digit(c) || c == '.') {
            std::size_t end = pos_;
            while (end < src_.size() && is_digit(src_[end])) ++end;
            if (end < src_.size() && src_[end] == '.') {
                ++end;
                while (end < src_.size() && is_digit(src_[end])) ++end;
            }
            if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
                std::size_t e = end + 1;
                if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) ++e;
                if (e < src_.size() && is_digit(src_[e])) {
                    while (e < src_.size() && is_digit(src_[e])) ++e;
                    end = e;
                }
            }
            const char* first = src_.data() + pos_;
            const char* last = src_.data() + end;
            auto [ptr, ec] = std::from_chars(first, last, number_);
            if (ec != std::errc() || ptr != last) fail("malformed number");
            pos_ = end;
            tok_ = Tok::Number;
            return;
        }
        const auto is_alpha = [](char ch) {
            return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_';
        };
        if (is_alpha(c)) {
            std::size_t end = pos_;
            while (end < src_.size() && (is_alpha(src_[end]) || is_digit(src_[end]))) ++end;
            ident_ = src_.substr(pos_, end - pos_);
            pos_ = end;
            tok_ = Tok::Ident;
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    void expect(Tok t) {
        if (tok_ != t) {
            fail("expected " + std::string(describe(t)) + ", found " + std::string(describe(tok_)));
        }
        advance();
    }

    Expr expr() {
        Expr lhs = term();
        while (tok_ == Tok::Plus || tok_ == Tok::Minus) {
            const auto op = tok_ == Tok::Plus ? Expr::BinaryOp::Add : Expr::BinaryOp::Sub;
            advance();
            lhs = Expr::binary(op, std::move(lhs), term());
        }
        return lhs;
    }

    Expr term() {
        Expr lhs = unary();
        while (tok_ == Tok::Star || tok_ == Tok::Slash) {
            const auto op = tok_ == Tok::Star ? Expr::BinaryOp::Mul : Expr::BinaryOp::Div;
            advance();
            lhs = Expr::binary(op, std::move(lhs), unary());
        }
        return lhs;
    }

    Expr unary() {
        if (tok_ == Tok::Minus) {
            advance();
            return Expr::negate(unary());
        }
        return power();
    }

    Expr power() {
        Expr b = base();
        if (tok_ == Tok::Caret) {
            advance();
            return Expr::binary(Expr::BinaryOp::Pow, std::move(b), unary());
        }
        return b;
    }

    Expr base() {
        switch (tok_) {
            case Tok::Number: {
                const double v = number_;
                advance();
                return Expr::number(v);
            }
            case Tok::LParen: {
                advance();
                Expr e = expr();
                expect(Tok::RParen);
                return e;
            }
            case Tok::Ident: return identifier();
            default:
                fail("expected number, 'x', '(' or function call, found " + std::string(describe(tok_)));
        }
    }

    Expr identifier() {
        const std::string_view name = ident_;
        const std::size_t name_start = tok_start_;
        if (name == "x") {
            advance();
            return Expr::variable();
        }
        static constexpr std::pair<std::string_view, Expr::Function> table[] = {
            {"sqrt", Expr::Function::Sqrt}, {"log", Expr::Function::Log}, {"exp", Expr::Function::Exp},
            {"abs", Expr::Function::Abs},   {"min", Expr::Function::Min}, {"max", Expr::Function::Max},
        };
        for (const auto& [fname, fn] : table) {
            if (name != fname) continue;
            advance();
            expect(Tok::LParen);
            std::vector<Expr> args;
            args.push_back(expr());
            const bool binary = fn == Expr::Function::Min || fn == Expr::Function::Max;
            if (binary) {
                expect(Tok::Comma);
                args.push_back(expr());
            }
            expect(Tok::RParen);
            return Expr::call(fn, std::move(args));
        }
        throw Error(ErrorKind::UnknownIdentifier,
                    "unknown identifier '" + std::string(name) + "' at offset " + std::to_string(name_start),
                    static_cast<double>(name_start));
    }
};

}  // namespace

Expr parse(std::string_view source) {
    Expr e = Parser(source).parse_all();
    e.source_ = std::make_shared<const std::string>(source);
    return e;
}

}  // namespace lipfix

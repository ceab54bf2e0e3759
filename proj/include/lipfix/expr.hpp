#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lipfix {

/// Immutable AST of a single-variable arithmetic expression in `x`.
///
/// Nodes are shared, so copying an Expr is cheap and concurrent evaluation
/// from many threads is safe. Expressions obtained from `parse` remember
/// their source text; `source()` returns it verbatim so that files written
/// back out match what the user wrote.
class Expr {
public:
    enum class Kind { Number, Variable, Negate, Binary, Call };
    enum class BinaryOp { Add, Sub, Mul, Div, Pow };
    enum class Function { Sqrt, Log, Exp, Abs, Min, Max };

    static Expr number(double value);
    static Expr variable();
    static Expr negate(Expr child);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
    /// Throws InvalidArgument when the argument count does not match the
    /// function's arity (min/max take two, everything else one).
    static Expr call(Function fn, std::vector<Expr> args);

    Kind kind() const noexcept;
    double number_value() const;
    BinaryOp binary_op() const;
    Function function() const;
    std::span<const Expr> children() const noexcept;

    /// IEEE double evaluation at `x`. Throws DomainError (sqrt of a negative,
    /// log of a non-positive, fractional power of a negative base, non-finite
    /// result) or DivideByZero; both carry `x`.
    double eval(double x) const;

    /// Fully parenthesised text that re-parses to an evaluation-equivalent tree.
    std::string serialize() const;

    /// Original text when parsed, otherwise `serialize()`.
    std::string source() const;

    bool is_constant_zero() const noexcept;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
    std::shared_ptr<const std::string> source_;

    friend Expr parse(std::string_view source);
};

/// Grammar (whitespace-insensitive):
///   expr   := term (("+"|"-") term)*
///   term   := unary (("*"|"/") unary)*
///   unary  := "-" unary | power
///   power  := base ("^" unary)?
///   base   := NUMBER | "x" | "(" expr ")" | IDENT "(" expr ("," expr)? ")"
/// `^` binds tighter than unary minus and is right-associative.
/// Throws SyntaxError (offset in `at()`) or UnknownIdentifier.
Expr parse(std::string_view source);

std::string_view function_name(Expr::Function fn) noexcept;

}  // namespace lipfix

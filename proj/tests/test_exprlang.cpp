#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lipfix/error.hpp"
#include "lipfix/expr.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace lipfix;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected lipfix::Error");
    return ErrorKind::InvalidArgument;
}

const std::vector<std::string> kCorpusExpressions = {
    "2*x", "0", "0.5*sqrt(x)+0.5", "log(x/(0.5*sqrt(x)+0.5)^2)", "log(x)", "0.5*x+1", "0.5*x-1", "abs(x)",
    "x", "0.25*x", "1.25*x+0.9375",
};

}  // namespace

TEST_CASE("parse and evaluate basic expressions") {
    CHECK(parse("0.5*sqrt(x)+0.5").eval(4.0) == 1.5);
    CHECK(parse("x^2 - 1").eval(3.0) == 8.0);
    CHECK(parse("x").eval(7.25) == 7.25);
    CHECK(parse("log(x/(0.5*sqrt(x)+0.5)^2)").eval(1.0) == 0.0);
}

TEST_CASE("syntax error positions") {
    try {
        parse("log(");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SyntaxError);
        REQUIRE(e.at());
        CHECK(*e.at() == 4.0);
    }
    CHECK(kind_of([] { parse("2x"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse(""); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse("(x"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse("x +* 2"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse("min(x)"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse("sqrt(x, 2)"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse("x $ 2"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("unknown identifiers") {
    CHECK(kind_of([] { parse("y + 1"); }) == ErrorKind::UnknownIdentifier);
    CHECK(kind_of([] { parse("sin(x)"); }) == ErrorKind::UnknownIdentifier);
    CHECK(kind_of([] { parse("X"); }) == ErrorKind::UnknownIdentifier);
}

TEST_CASE("evaluation errors carry x") {
    try {
        parse("sqrt(x)").eval(-1.0);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DomainError);
        CHECK(*e.at() == -1.0);
    }
    CHECK(kind_of([] { parse("log(x)").eval(0.0); }) == ErrorKind::DomainError);
    CHECK(kind_of([] { parse("log(x)").eval(-2.0); }) == ErrorKind::DomainError);
    CHECK(kind_of([] { parse("1/x").eval(0.0); }) == ErrorKind::DivideByZero);
    CHECK(kind_of([] { parse("x^0.5").eval(-4.0); }) == ErrorKind::DomainError);
    CHECK(kind_of([] { parse("x^-1").eval(0.0); }) == ErrorKind::DivideByZero);
    CHECK(kind_of([] { parse("exp(x)").eval(1000.0); }) == ErrorKind::DomainError);
    CHECK(parse("x^3").eval(-2.0) == -8.0);
}

TEST_CASE("precedence and associativity") {
    CHECK(parse("-x^2").eval(3.0) == -9.0);
    CHECK(parse("2^3^2").eval(0.0) == 512.0);
    CHECK(parse("8/4/2").eval(0.0) == 1.0);
    CHECK(parse("8-4-2").eval(0.0) == 2.0);
    CHECK(parse("2^-1").eval(0.0) == 0.5);
    CHECK(parse("--x").eval(2.0) == 2.0);
    CHECK(parse("min(x, 3) + max(x, 3)").eval(5.0) == 8.0);
    CHECK(parse(" 1.5e1 * x ").eval(2.0) == 30.0);
    CHECK(parse(".5").eval(0.0) == 0.5);
    CHECK(parse("x \xE2\x88\x92 1").eval(3.0) == 2.0);
    CHECK(parse("exp(0)").eval(0.0) == 1.0);
}

TEST_CASE("precedence property a+b*c") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-1e3, 1e3);
    for (int i = 0; i < 200; ++i) {
        const double a = d(rng), b = d(rng), c = d(rng);
        const Expr e = Expr::binary(Expr::BinaryOp::Add, Expr::number(a),
                                    Expr::binary(Expr::BinaryOp::Mul, Expr::number(b), Expr::number(c)));
        const Expr reparsed = parse(e.serialize());
        CHECK(reparsed.eval(0.0) == a + (b * c));
        char buf[128];
        std::snprintf(buf, sizeof buf, "%.17g+%.17g*%.17g", a, b, c);
        CHECK(parse(buf).eval(0.0) == a + (b * c));
    }
}

TEST_CASE("arity checked at construction") {
    CHECK(kind_of([] { Expr::call(Expr::Function::Min, {Expr::variable()}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { Expr::call(Expr::Function::Sqrt, {Expr::variable(), Expr::variable()}); }) ==
          ErrorKind::InvalidArgument);
}

TEST_CASE("serialize round trip on corpus expressions") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(1.0, 4.0);
    for (const auto& src : kCorpusExpressions) {
        const Expr e = parse(src);
        CHECK(e.source() == src);
        const Expr back = parse(e.serialize());
        for (int k = 0; k < 100; ++k) {
            const double x = d(rng);
            CHECK(back.eval(x) == e.eval(x));
        }
    }
    const Expr neg = Expr::number(-2.5);
    CHECK(parse(Expr::binary(Expr::BinaryOp::Pow, Expr::variable(), neg).serialize()).eval(2.0) ==
          std::pow(2.0, -2.5));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>

#include "frac/expression.hpp"

using frac::cli::EvalContext;
using frac::cli::EvalError;
using frac::cli::ParseError;
using frac::cli::RhsExpression;

namespace {

double eval(const std::string& src, double t = 0, double x = 0,
            double z = 0) {
    EvalContext ctx;
    ctx.t = t;
    ctx.x = x;
    ctx.z = z;
    return RhsExpression::parse(src).eval(ctx);
}

// Random expression generator that computes the expected value through
// its own recursion; doubles as the reference evaluator.
struct Gen {
    std::mt19937_64 rng;
    double t, x, z;

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * std::uniform_real_distribution<double>()(rng);
    }
    int pick(int n) {
        return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng));
    }

    std::pair<std::string, double> node(int depth) {
        if (depth <= 0 || pick(3) == 0) {
            switch (pick(5)) {
                case 0: return {"t", t};
                case 1: return {"x", x};
                case 2: return {"z", z};
                case 3: {
                    const double v = uniform(0.1, 9.9);
                    char buf[40];
                    std::snprintf(buf, sizeof buf, "%.17g", v);
                    return {buf, v};
                }
                default: return {"pi", 3.14159265358979323846};
            }
        }
        auto [ls, lv] = node(depth - 1);
        switch (pick(8)) {
            case 0: {
                auto [rs, rv] = node(depth - 1);
                return {"(" + ls + " + " + rs + ")", lv + rv};
            }
            case 1: {
                auto [rs, rv] = node(depth - 1);
                return {"(" + ls + " - " + rs + ")", lv - rv};
            }
            case 2: {
                auto [rs, rv] = node(depth - 1);
                return {"(" + ls + "*" + rs + ")", lv * rv};
            }
            case 3: {
                auto [rs, rv] = node(depth - 1);
                if (rv == 0.0) return {ls, lv};
                return {"(" + ls + "/" + rs + ")", lv / rv};
            }
            case 4: return {"(-" + ls + ")", -lv};
            case 5: return {"abs(" + ls + ")", std::abs(lv)};
            case 6: {
                const double clamped = std::min(std::abs(lv), 20.0);
                char divisor[40];
                std::snprintf(divisor, sizeof divisor, "%.17g",
                              std::max(std::abs(lv) / 20.0, 1.0));
                return {"exp(-abs(" + ls + ")/" + divisor + ")",
                        std::exp(-clamped)};
            }
            default: {
                const double e = uniform(0.2, 2.5);
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", e);
                return {"(abs(" + ls + ") + 0.5)^" + buf,
                        std::pow(std::abs(lv) + 0.5, e)};
            }
        }
    }
};

}  // namespace

TEST_CASE("atoms and spot evaluations") {
    CHECK(eval("t", 4.5) == 4.5);
    CHECK(eval("2^3^2") == 512.0);  // right associative
    CHECK(eval("exp(-z)*x^2", 0, 3, 0) == doctest::Approx(9.0));
    CHECK(eval("-2^2") == -4.0);    // ^ binds tighter than unary minus
    CHECK(eval("2+3*4") == 14.0);
    CHECK(eval("(2+3)*4") == 20.0);
    CHECK(eval("2-3-4") == -5.0);
    CHECK(eval("pow(2, 10)") == 1024.0);
    CHECK(eval("abs(-3.5)") == 3.5);
    CHECK(eval("log(e)") == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval("pi") == doctest::Approx(3.14159265358979).epsilon(1e-15));
    CHECK(eval("2e3") == 2000.0);  // exponent notation, not the constant e
    CHECK(eval(" 1 +   2 * z ", 0, 0, 3) == 7.0);
}

TEST_CASE("parse errors carry a column") {
    CHECK_THROWS_AS(RhsExpression::parse("2 +"), ParseError);
    CHECK_THROWS_AS(RhsExpression::parse("foo(2)"), ParseError);
    CHECK_THROWS_AS(RhsExpression::parse("(1 + 2"), ParseError);
    CHECK_THROWS_AS(RhsExpression::parse("1 2"), ParseError);
    CHECK_THROWS_AS(RhsExpression::parse("pow(1)"), ParseError);
    try {
        RhsExpression::parse("1 + unknown_name");
    } catch (const ParseError& e) {
        CHECK(e.column == 4);
        CHECK(std::string(e.what()).find("unknown_name") !=
              std::string::npos);
    }
}

TEST_CASE("evaluation errors are located and domain-aware") {
    RhsExpression needs_x = RhsExpression::parse("x + 1");
    EvalContext no_x;
    no_x.t = 1.0;
    CHECK_THROWS_AS(needs_x.eval(no_x), EvalError);

    CHECK_THROWS_AS(eval("1/ (t - t)", 2.0), EvalError);  // division by zero
    CHECK_THROWS_AS(eval("log(0 - z)", 0, 0, 1.0), EvalError);
    CHECK_THROWS_AS(eval("exp(t)", 1e6), EvalError);  // overflow
}

TEST_CASE("uses_variable reports exactly the variables present") {
    RhsExpression e = RhsExpression::parse("0.1*z^0.5*exp(-z)*x^2");
    CHECK(e.uses_variable('z'));
    CHECK(e.uses_variable('x'));
    CHECK_FALSE(e.uses_variable('t'));
}

TEST_CASE("print/parse round trip is the identity on 500 random trees") {
    Gen gen{std::mt19937_64(61), 1.7, -0.4, 2.3};
    for (int i = 0; i < 500; ++i) {
        auto [src, expected] = gen.node(4);
        RhsExpression first = RhsExpression::parse(src);
        const std::string printed = first.print();
        RhsExpression second = RhsExpression::parse(printed);
        CHECK(second.print() == printed);

        EvalContext ctx;
        ctx.t = gen.t;
        ctx.x = gen.x;
        ctx.z = gen.z;
        const double got = first.eval(ctx);
        const double again = second.eval(ctx);
        CHECK(got == again);
        // reference value computed by the generator's own recursion
        CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    }
}

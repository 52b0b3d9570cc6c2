// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "fewbody/expr.hpp"

using namespace fewbody;

TEST_CASE("basic evaluation") {
    CHECK(parse_potential_expr("-1/r").eval(2.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(parse_potential_expr("2+3*r^2").eval(1.0) == doctest::Approx(5.0).epsilon(1e-15));

    const double direct = (678.1 * std::exp(-2.55) - 166.0 * std::exp(-0.68)) / 1.0;
    CHECK(parse_potential_expr("(678.1*exp(-2.55*r) - 166.0*exp(-0.68*r))/r").eval(1.0) ==
          doctest::Approx(direct).epsilon(1e-15));

    CHECK(parse_potential_expr("sqrt(r)").eval(9.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(parse_potential_expr("  1.5e-2 * r ").eval(4.0) ==
          doctest::Approx(0.06).epsilon(1e-15));
}

TEST_CASE("operator precedence and associativity") {
    // caret binds tighter than unary minus
    CHECK(parse_potential_expr("-2^2").eval(0.0) == doctest::Approx(-4.0));
    // right-associative power
    CHECK(parse_potential_expr("2^3^2").eval(0.0) == doctest::Approx(512.0));
    // unary sign allowed in the exponent
    CHECK(parse_potential_expr("2^-3").eval(0.0) == doctest::Approx(0.125));
    // * binds tighter than +
    CHECK(parse_potential_expr("1+2*3").eval(0.0) == doctest::Approx(7.0));
    // parentheses override
    CHECK(parse_potential_expr("(1+2)*3").eval(0.0) == doctest::Approx(9.0));
    // left-to-right division
    CHECK(parse_potential_expr("8/4/2").eval(0.0) == doctest::Approx(1.0));
    // ^ binds tighter than *
    CHECK(parse_potential_expr("2*r^2").eval(3.0) == doctest::Approx(18.0));
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse_potential_expr(""), ParseError);
    CHECK_THROWS_AS(parse_potential_expr("1+"), ParseError);
    CHECK_THROWS_AS(parse_potential_expr("(1+2"), ParseError);
    CHECK_THROWS_AS(parse_potential_expr("1 2"), ParseError);
    CHECK_THROWS_AS(parse_potential_expr("foo(r)"), ParseError);
    CHECK_THROWS_AS(parse_potential_expr("exp r"), ParseError);
    CHECK_THROWS_AS(parse_potential_expr("r @ 2"), ParseError);

    try {
        parse_potential_expr("1+2*&");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("offset 4") != std::string::npos);
    }
}

TEST_CASE("deep nesting is rejected, not a crash") {
    std::string deep;
    for (int i = 0; i < 500; ++i)
        deep += '(';
    deep += 'r';
    for (int i = 0; i < 500; ++i)
        deep += ')';
    CHECK_THROWS_AS(parse_potential_expr(deep), ParseError);

    std::string negs(500, '-');
    negs += 'r';
    CHECK_THROWS_AS(parse_potential_expr(negs), ParseError);
}

TEST_CASE("complex evaluation matches real evaluation on the real axis") {
    const char* exprs[] = {"-1/r", "2+3*r^2", "exp(-0.5*r)*r^3",
                           "(678.1*exp(-2.55*r) - 166.0*exp(-0.68*r))/r",
                           "sqrt(r)/(1+r)", "r^-2 - 2*r^-1"};
    for (const char* text : exprs) {
        const PotentialExpr e = parse_potential_expr(text);
        for (double r : {0.3, 1.0, 2.7, 11.0}) {
            const cplx zc = e.eval(cplx(r, 0.0));
            CHECK(zc.real() == e.eval(r)); // bit-identical by contract
            CHECK(zc.imag() == 0.0);
        }
    }
}

TEST_CASE("complex evaluation off the real axis is analytic continuation") {
    const PotentialExpr e = parse_potential_expr("exp(-2*r)");
    const cplx z(1.0, 0.25);
    const cplx expect = std::exp(-2.0 * z);
    CHECK(std::abs(e.eval(z) - expect) < 1e-15);
}

TEST_CASE("parser totality fuzz") {
    // Random byte strings over the expression alphabet: every input either
    // parses or throws ParseError; nothing else may escape.
    const std::string alphabet = "0123456789.+-*/^()rexpsqrt E";
    std::mt19937 rng(20260823);
    std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> len(0, 40);
    int parsed = 0;
    for (int iter = 0; iter < 10000; ++iter) {
        std::string text;
        const int n = len(rng);
        for (int i = 0; i < n; ++i)
            text += alphabet[pick(rng)];
        try {
            PotentialExpr e = parse_potential_expr(text);
            (void)e.eval(1.3); // evaluation of a parsed tree must not throw
            ++parsed;
        } catch (const ParseError&) {
            // expected for malformed inputs
        }
    }
    CHECK(parsed > 0); // the generator does produce some valid expressions
}

TEST_CASE("to_potential wraps the expression as a callable") {
    const PotentialModel p = parse_potential_expr("-10*exp(-1.0*r^2)").to_potential();
    CHECK(p.complex_capable());
    CHECK(p(0.0) == doctest::Approx(-10.0));
    CHECK(p(1.0) == doctest::Approx(-10.0 * std::exp(-1.0)));
    CHECK(std::abs(p.eval_complex(cplx(1.0, 0.0)) - cplx(-10.0 * std::exp(-1.0))) < 1e-15);
}

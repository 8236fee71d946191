#include "doctest.h"

#include "fuzzchain/error.hpp"
#include "fuzzchain/expr.hpp"

using namespace fuzzchain;

namespace {

Assignment sigma() {
    return parse_assignment("x = 0.3\ny = 0.7\nw = 0.6\nz = 0.8\nxbar = 0.5\n");
}

}  // namespace

TEST_CASE("membership domain") {
    CHECK(Membership(0.25).value() == 0.25);
    CHECK_THROWS_AS(Membership(1.5), DomainError);
    CHECK_THROWS_AS(Membership(-0.1), DomainError);
    CHECK(snorm_max(Membership(0.3), Membership(0.8)) == Membership(0.8));
    CHECK(tnorm_min(Membership(0.3), Membership(0.8)) == Membership(0.3));
    CHECK(format_membership(Membership(0.1)) == "0.1");
    CHECK(format_membership(Membership::one()) == "1");
    CHECK(format_membership(Membership::zero()) == "0");
}

TEST_CASE("binding parsing") {
    auto [name, value] = parse_binding("x=0.3");
    CHECK(name == "x");
    CHECK(value == Membership(0.3));
    CHECK_THROWS_AS(parse_binding("x=1.2"), BindingError);
    CHECK_THROWS_AS(parse_binding("x=abc"), BindingError);
    Assignment a = parse_assignment("# comment\nx = 0.5\n\ny=1\n");
    REQUIRE(a.find("x"));
    CHECK(*a.find("x") == Membership(0.5));
    CHECK(*a.find("y") == Membership::one());
}

TEST_CASE("atoms") {
    CHECK(Atom::var("x").to_string() == "x");
    CHECK(Atom::call("psi1", 2).to_string() == "psi1^2");
    CHECK(Atom::call("psi1", 2).is_call());
    CHECK_THROWS(Atom::var("1x"));
}

TEST_CASE("parse_expr") {
    FtfExpr e = parse_expr("psi1^2 * y");
    REQUIRE(e.terms().size() == 1);
    REQUIRE(e.terms()[0].atoms.size() == 2);
    CHECK(e.terms()[0].atoms[0] == Atom::call("psi1", 2));
    CHECK(e.terms()[0].atoms[1] == Atom::var("y"));
    CHECK(parse_expr("0").terms().empty());
    CHECK(parse_expr("1") == FtfExpr::one());
    CHECK_THROWS_AS(parse_expr("x + * y"), ParseError);
    try {
        parse_expr("x + y^z");
        FAIL("expected a parse error");
    } catch (const ParseError& err) {
        CHECK(err.line() == 1);
        CHECK(err.column() == 7);
    }
}

TEST_CASE("evaluation of psi1's transmission function") {
    FtfExpr e = parse_expr("x*z + x*xbar*w + y*w + y*xbar*z");
    CHECK(eval_expr(e, sigma()) == Membership(0.6));
    CHECK(eval_expr(FtfExpr::zero(), sigma()) == Membership::zero());
    CHECK(eval_expr(FtfExpr::one(), sigma()) == Membership::one());
    CHECK_THROWS_AS(eval_expr(parse_expr("q"), sigma()), BindingError);
    CHECK_THROWS_AS(eval_expr(parse_expr("psi1^1"), sigma()), BindingError);
}

TEST_CASE("canonical and simplified forms") {
    FtfExpr e = parse_expr("z*x + x*z*x + y*w + x*z*w");
    CHECK(format_expr(e, FormatMode::Raw) == "z*x + x*z*x + y*w + x*z*w");
    CHECK(format_expr(canonicalize(e), FormatMode::Raw) == "w*x*z + w*y + x*z");
    CHECK(format_expr(canonicalize(e, Simplify::Yes), FormatMode::Raw) == "w*y + x*z");
    CHECK(canonicalize(canonicalize(e)) == canonicalize(e));
}

TEST_CASE("juxtaposed display") {
    FtfExpr e = parse_expr("y*w + x*xbar*w + x*z + y*xbar*z");
    CHECK(format_expr(sort_for_display(e), FormatMode::Paper) == "xz + x*xbar*w + yw + y*xbar*z");
    CHECK(format_expr(parse_expr("psi2^1*psi4^1"), FormatMode::Paper) == "psi2^1*psi4^1");
}

TEST_CASE("union and concatenation") {
    FtfExpr a = parse_expr("x + y");
    FtfExpr b = parse_expr("z");
    CHECK(format_expr(expr_union(a, b), FormatMode::Raw) == "x + y + z");
    CHECK(format_expr(expr_concat(a, b), FormatMode::Raw) == "x*z + y*z");
    CHECK(expr_concat(a, FtfExpr::zero()).terms().empty());
    CHECK(expr_concat(a, FtfExpr::one()) == a);
}

TEST_CASE("power") {
    FtfExpr e = parse_expr("x*z + y*w");
    FtfExpr sq = expr_power(e, 2);
    CHECK(format_expr(sq, FormatMode::Canonical) == "w*x*y*z + w*y + x*z");
    CHECK(expr_power(e, 1) == canonicalize(e));
    CHECK_THROWS_AS(expr_power(e, 0), DomainError);
    CHECK(eval_expr(sq, sigma()) == eval_expr(e, sigma()));
}

TEST_CASE("multinomial expansion") {
    auto entries = multinomial_expand(parse_expr("x*z + y*w"), 2);
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].composition == std::vector<unsigned>{2, 0});
    CHECK(entries[1].composition == std::vector<unsigned>{1, 1});
    CHECK(entries[2].composition == std::vector<unsigned>{0, 2});
    CHECK(entries[0].coefficient == 1);
    CHECK(entries[1].coefficient == 2);
    CHECK(entries[2].coefficient == 1);
    CHECK(format_term(entries[1].term, FormatMode::Raw) == "w*x*y*z");
    CHECK(multinomial_coefficient(4, {1, 1, 1, 1}) == 24);
    CHECK(multinomial_coefficient(20, {10, 10}) == BigInt("184756"));
    CHECK_THROWS_AS(multinomial_coefficient(3, {1, 1}), DomainError);
}

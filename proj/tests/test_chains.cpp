#include "doctest.h"

#include "fuzzchain/chains.hpp"
#include "fuzzchain/closure.hpp"
#include "fuzzchain/error.hpp"
#include "fuzzchain/fixtures.hpp"

using namespace fuzzchain;

namespace {

std::vector<std::string> labels(const FuzzySystem& s) {
    std::vector<std::string> out;
    for (const Chain& c : enumerate_chains(s)) out.push_back(chain_label(s, c));
    return out;
}

void check_ftf(const char* system, const char* expected) {
    CAPTURE(system);
    SystemRegistry r = builtin_fixtures();
    CHECK(derive_ftf(r.at(system)) == canonicalize(parse_expr(expected)));
}

}  // namespace

TEST_CASE("chains of psi1 and phi") {
    SystemRegistry r = builtin_fixtures();
    const std::vector<std::string> expected{"A-C-B", "A-C-D-B", "A-D-B", "A-D-C-B"};
    CHECK(labels(r.at("psi1")) == expected);
    CHECK(labels(r.at("phi")) == expected);
}

TEST_CASE("chains of small graphs") {
    SystemRegistry r = parse_registry("system a { terminals A -> B }\n"
                                      "system b { terminals A -> B ; edge A B x }\n");
    CHECK(labels(r.at("a")).empty());
    CHECK(labels(r.at("b")) == std::vector<std::string>{"A-B"});
    CHECK(derive_ftf(r.at("a")) == FtfExpr::zero());
    CHECK_THROWS_AS(parse_registry("system c { terminals A -> A ; edge A B x }"), ParseError);
}

TEST_CASE("fixture transmission functions") {
    check_ftf("psi1", "x*z + x*xbar*w + y*w + y*xbar*z");
    check_ftf("psi2", "xbar*z + xbar*x*w + y*w + y*x*z");
    check_ftf("psi3", "xbar*z + xbar*w*x + y*x + y*w*z");
    check_ftf("psi4", "xbar*w + xbar*y*z + x*z + x*y*w");
    check_ftf("psi5", "xbar*y + xbar*w*z + x*z + x*w*y");
    check_ftf("phi", "psi2^1*psi4^1 + psi2^1*psi1^1*psi5^1 + psi3^1*psi1^1*psi4^1 + psi3^1*psi5^1");
}

TEST_CASE("phi with configured counts") {
    FixtureOptions opts;
    opts.phi_counts = {2, 3, 1, 4, 1};
    SystemRegistry r = builtin_fixtures(opts);
    CHECK(derive_ftf(r.at("phi")) ==
          canonicalize(parse_expr("psi2^3*psi4^4 + psi2^3*psi1^2*psi5^1 + psi3^1*psi1^2*psi4^4 + psi3^1*psi5^1")));
}

TEST_CASE("raw and juxtaposed forms") {
    SystemRegistry r = builtin_fixtures();
    CHECK(format_expr(derive_ftf_raw(r.at("psi1")), FormatMode::Paper) == "xz + x*xbar*w + yw + y*xbar*z");
    CHECK(format_expr(derive_ftf_raw(r.at("psi1")), FormatMode::Raw) == "x*z + x*xbar*w + y*w + y*xbar*z");
    CHECK(format_expr(derive_ftf_raw(r.at("psi1_rec")), FormatMode::Paper) ==
          "xz + x*psi1_rec^2*w + yw + y*psi1_rec^2*z");
}

TEST_CASE("chain spaces") {
    NumericMatrix mu = NumericMatrix::from_rows({
        {1, 0.4, 0, 0},
        {0, 1, 0.9, 0},
        {0, 0, 1, 0.7},
        {0.2, 0, 0, 1},
    });
    SystemRegistry r = builtin_fixtures();
    std::vector<std::string> items = labels(r.at("psi1"));
    ChainSpace space = lift_chain_space(items, mu, 2);
    CHECK(space.size() == 4);
    CHECK(space.degree() == 2);
    CHECK(chain_value(space, {0, 1, 2, 3}) == Membership(0.4));
    CHECK(chain_value(space, {1, 2}) == Membership(0.9));
    CHECK(chain_value(space, {1, 0}) == Membership::zero());
    CHECK(best_chain_value(space, 0, 3) == Membership(0.4));
    CHECK(best_chain_value(space, 3, 2) == Membership(0.2));
    CHECK(best_chain_value(space, 2, 2) == Membership::one());
    CHECK(sequence_label(space, {0, 2}) == "[A-C-B A-D-B]");
    CHECK_THROWS_AS(chain_value(space, {0}), DomainError);
    CHECK_THROWS_AS(chain_value(space, {0, 9}), DomainError);
    CHECK_THROWS_AS(lift_chain_space(items, mu, 1), DomainError);
    CHECK_THROWS_AS(ChainSpace(2, {"a"}, mu), DomainError);
    CHECK(point_space({"A", "B", "C", "D"}, mu).degree() == 1);
}

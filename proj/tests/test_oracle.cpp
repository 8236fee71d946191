#include "doctest.h"

#include "fuzzchain/check.hpp"
#include "fuzzchain/closure.hpp"
#include "fuzzchain/error.hpp"
#include "fuzzchain/fixtures.hpp"
#include "fuzzchain/oracle.hpp"
#include "fuzzchain/random.hpp"
#include "fuzzchain/recursion.hpp"

using namespace fuzzchain;

namespace {

Assignment sigma() {
    return parse_assignment("x = 0.3\ny = 0.7\nw = 0.6\nz = 0.8\nxbar = 0.5\n");
}

}  // namespace

TEST_CASE("path oracle on psi1") {
    SystemRegistry r = builtin_fixtures();
    NumericMatrix m = resolve_matrix(r, r.at("psi1"), sigma());
    auto edges = matrix_edges(m);
    CHECK(edges.size() == 5);
    CHECK(oracle_path_enum(4, edges, 0, 1) == Membership(0.6));
    CHECK(oracle_path_enum(4, edges, 2, 2) == Membership::one());
    CHECK(oracle_path_enum(3, {}, 0, 1) == Membership::zero());
    CHECK(oracle_walk_enum(4, edges, 0, 1, 8) == Membership(0.6));
    CHECK(oracle_walk_enum(4, edges, 0, 1, 1) == Membership::zero());
}

TEST_CASE("restricted and directed oracles") {
    NumericMatrix m = NumericMatrix::from_rows({{1, 0.4, 0}, {0.4, 1, 0.9}, {0, 0.9, 1}});
    CHECK(oracle_restricted_path(m, 0, 2, std::nullopt) == Membership::zero());
    CHECK(oracle_restricted_path(m, 0, 2, 0) == Membership::zero());
    CHECK(oracle_restricted_path(m, 0, 2, 1) == Membership(0.4));
    NumericMatrix d = NumericMatrix::from_rows({{1, 0.4, 0}, {0, 1, 0.9}, {0, 0, 1}});
    CHECK(oracle_directed_path(d, 0, 2) == Membership(0.4));
    CHECK(oracle_directed_path(d, 2, 0) == Membership::zero());
}

TEST_CASE("unrolling interpreter") {
    SystemRegistry r = builtin_fixtures();
    CHECK(oracle_unroll_eval(r, "psi1", sigma()) == Membership(0.6));
    CHECK(oracle_unroll_eval(r, "psi1_rec", sigma()) == Membership(0.6));
    Assignment high = parse_assignment("x = 0.9\ny = 0.2\nw = 0.8\nz = 0.1\nxbar = 0.95\n");
    CHECK(oracle_unroll_eval(r, "psi1_rec", high, 0u) == Membership(0.2));
}

TEST_CASE("power oracle") {
    FtfExpr e = parse_expr("x1 + x2");
    Assignment a = parse_assignment("x1 = 0.3\nx2 = 0.8\n");
    CHECK(oracle_power_eval(e, 2, a) == Membership(0.8));
    CHECK(oracle_power_eval(e, 1, a) == eval_expr(e, a));
    CHECK_THROWS_AS(oracle_power_eval(e, 4, a), DomainError);
    CHECK_THROWS_AS(oracle_power_eval(parse_expr("psi1^1"), 2, a), DomainError);
}

TEST_CASE("splitmix64 sequence") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
    SplitMix64 a(trial_seed(42, 1, 7));
    SplitMix64 b(trial_seed(42, 1, 7));
    CHECK(a.next() == b.next());
    CHECK(trial_seed(42, 1, 7) != trial_seed(42, 1, 8));
    SplitMix64 g(5);
    for (int i = 0; i < 200; ++i) {
        double v = grid_membership(g).value() * 19;
        CHECK(v == static_cast<double>(static_cast<int>(v + 0.5)));
    }
}

TEST_CASE("random generators are deterministic") {
    RandomRegistryOptions opts;
    SplitMix64 a(9);
    SplitMix64 b(9);
    CHECK(random_registry(a, opts) == random_registry(b, opts));
    SplitMix64 c(3);
    NumericMatrix m = random_reflexive_matrix(c, 6);
    CHECK(m.is_symmetric());
    CHECK(m.has_unit_diagonal());
}

TEST_CASE("differential suites with a small budget") {
    for (const auto& suite : run_all_checks(7, 40)) {
        CAPTURE(suite.name);
        CHECK(suite.total > 0);
        CHECK(suite.ok());
    }
}

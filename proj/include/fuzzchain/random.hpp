#pragma once

// Seeded instance generators. The stream is SplitMix64 so a seed reproduces the
// same instances in any implementation.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fuzzchain/closure.hpp"
#include "fuzzchain/expr.hpp"
#include "fuzzchain/system.hpp"

namespace fuzzchain {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    /// True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::uint64_t state_;
};

/// Seed of trial `index` in a run seeded with `seed`; trials are independent of
/// each other and of the order they run in.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t suite, std::uint64_t index);

/// One of the 20 grid points k/19, k = 0..19.
Membership grid_membership(SplitMix64& rng);

/// n x n, unit diagonal, symmetric, off-diagonal entries from the grid.
NumericMatrix random_reflexive_matrix(SplitMix64& rng, std::size_t n);
/// Arbitrary (not necessarily symmetric) n x n matrix from the grid.
NumericMatrix random_matrix(SplitMix64& rng, std::size_t n);

/// Variables v0..v{count-1}.
std::vector<std::string> variable_pool(std::size_t count);
Assignment random_assignment(SplitMix64& rng, const std::vector<std::string>& vars);

/// 1..max_terms terms of 1..max_atoms variables drawn from vars.
FtfExpr random_expr(SplitMix64& rng, const std::vector<std::string>& vars, std::size_t max_terms,
                    std::size_t max_atoms);

struct RandomRegistryOptions {
    std::size_t max_systems = 3;
    std::size_t max_vertices = 7;
    std::size_t max_edges = 12;
    /// Probability (percent) that an edge is a call.
    unsigned call_percent = 30;
    unsigned max_count = 3;
    /// Calls target only the calling system, and every system has at least one.
    bool self_calls_only = false;
    std::size_t variables = 6;
};

/// Systems s0..s{m-1} over vertices n0..n{k-1}, terminals n0 -> n1, variables
/// from variable_pool(options.variables).
SystemRegistry random_registry(SplitMix64& rng, const RandomRegistryOptions& options);

}  // namespace fuzzchain

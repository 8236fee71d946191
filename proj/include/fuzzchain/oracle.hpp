#pragma once

// Slow, obviously-correct reference computations used to cross-check the
// chain, recursion and closure engines. Nothing here reuses their traversal
// code; only the scalar max/min and the data model are shared.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fuzzchain/closure.hpp"
#include "fuzzchain/expr.hpp"
#include "fuzzchain/system.hpp"

namespace fuzzchain {

/// Instance size caps for randomized oracle comparisons.
struct OracleLimits {
    std::size_t max_vertices = 8;
    unsigned max_power = 3;
    std::size_t max_terms = 4;
};

struct WeightedEdge {
    std::size_t u;
    std::size_t v;
    Membership value;
};

/// Max over all simple from->to paths of the min edge value; 0 without a path,
/// 1 when from == to.
Membership oracle_path_enum(std::size_t vertex_count, const std::vector<WeightedEdge>& edges, std::size_t from,
                            std::size_t to);

/// Directed version over a transition matrix: best simple item sequence from -> to
/// valued by the min of m(f_i, f_{i+1}); 1 when from == to.
Membership oracle_directed_path(const NumericMatrix& m, std::size_t from, std::size_t to);

/// Same over walks of at most `max_edges` edges (vertices may repeat).
Membership oracle_walk_enum(std::size_t vertex_count, const std::vector<WeightedEdge>& edges, std::size_t from,
                            std::size_t to, std::size_t max_edges);

/// Off-diagonal entries of a matrix as an undirected edge list (upper triangle).
std::vector<WeightedEdge> matrix_edges(const NumericMatrix& m);

/// Best simple path in m whose intermediate vertices all have index <= max_intermediate
/// (none allowed when max_intermediate is nullopt).
Membership oracle_restricted_path(const NumericMatrix& m, std::size_t from, std::size_t to,
                                  std::optional<std::size_t> max_intermediate);

/// Definitional interpreter for deep systems, without memoisation: the body of
/// `name` at `budget` (nullopt = unbounded), every call unrolled on the spot.
Membership oracle_unroll_eval(const SystemRegistry& registry, const std::string& name, const Assignment& assignment,
                              std::optional<unsigned> budget = std::nullopt);

/// Max over every composition n_1 + ... + n_m = k of the min over the atoms of
/// the terms used. Throws DomainError unless 1 <= k <= limits.max_power or when e contains calls.
Membership oracle_power_eval(const FtfExpr& e, unsigned k, const Assignment& assignment,
                             const OracleLimits& limits = {});

}  // namespace fuzzchain

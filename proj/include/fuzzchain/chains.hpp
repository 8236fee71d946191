#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fuzzchain/closure.hpp"
#include "fuzzchain/expr.hpp"
#include "fuzzchain/system.hpp"

namespace fuzzchain {

/// Simple path from the input terminal to the output terminal (vertex indices).
struct Chain {
    std::vector<std::size_t> vertices;

    auto operator<=>(const Chain&) const = default;
};

/// All simple input->output chains, lexicographic in vertex order.
std::vector<Chain> enumerate_chains(const FuzzySystem& system);

/// "A-C-D-B".
std::string chain_label(const FuzzySystem& system, const Chain& chain);

/// Edge labels along the chain, in traversal order.
Term chain_term(const FuzzySystem& system, const Chain& chain);

/// Union over chains of their edge-label concatenations, canonical and unsimplified.
FtfExpr derive_ftf(const FuzzySystem& system);

/// Same terms with atoms in traversal order, sorted for display.
FtfExpr derive_ftf_raw(const FuzzySystem& system);

/// Chains of degree n: a sequence of degree-(n-1) items valued by the min of its
/// transition grades mu(f_i, f_{i+1}).
class ChainSpace {
public:
    /// Throws DomainError unless mu is square over items and degree >= 1.
    ChainSpace(unsigned degree, std::vector<std::string> items, NumericMatrix mu);

    unsigned degree() const { return degree_; }
    const std::vector<std::string>& items() const { return items_; }
    const NumericMatrix& mu() const { return mu_; }
    std::size_t size() const { return items_.size(); }

private:
    unsigned degree_;
    std::vector<std::string> items_;
    NumericMatrix mu_;
};

/// Degree-one space over points, e.g. the vertices of a resolved system.
ChainSpace point_space(std::vector<std::string> points, NumericMatrix mu);

/// Space of degree `degree` (>= 2) over supplied degree-(n-1) items.
ChainSpace lift_chain_space(std::vector<std::string> items, NumericMatrix mu, unsigned degree);

/// Min of mu over consecutive pairs. Throws DomainError for fewer than two
/// indices or an index out of range.
Membership chain_value(const ChainSpace& space, const std::vector<std::size_t>& seq);

/// Best chain_value over all sequences from -> to; 1 when from == to.
Membership best_chain_value(const ChainSpace& space, std::size_t from, std::size_t to);

/// "[A-C-B A-D-B]" style label for a sequence of items, used to name lifted items.
std::string sequence_label(const ChainSpace& space, const std::vector<std::size_t>& seq);

}  // namespace fuzzchain

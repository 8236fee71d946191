#include "fuzzchain/chains.hpp"

#include <algorithm>
#include <functional>

#include "fuzzchain/error.hpp"

namespace fuzzchain {

std::vector<Chain> enumerate_chains(const FuzzySystem& system) {
    const std::size_t n = system.vertex_count();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t v = 0; v < n; ++v) adj[v] = system.neighbours(v);

    std::vector<Chain> out;
    std::vector<bool> on_path(n, false);
    std::vector<std::size_t> path{system.input()};
    on_path[system.input()] = true;

    // Depth-first in ascending neighbour order yields lexicographic output.
    std::function<void(std::size_t)> extend = [&](std::size_t v) {
        if (v == system.output()) {
            out.push_back(Chain{path});
            return;
        }
        for (std::size_t w : adj[v]) {
            if (on_path[w]) continue;
            on_path[w] = true;
            path.push_back(w);
            extend(w);
            path.pop_back();
            on_path[w] = false;
        }
    };
    extend(system.input());
    return out;
}

std::string chain_label(const FuzzySystem& system, const Chain& chain) {
    std::string out;
    for (std::size_t i = 0; i < chain.vertices.size(); ++i) {
        if (i > 0) out += '-';
        out += system.vertices()[chain.vertices[i]];
    }
    return out;
}

Term chain_term(const FuzzySystem& system, const Chain& chain) {
    Term t;
    for (std::size_t i = 0; i + 1 < chain.vertices.size(); ++i) {
        const Atom* a = system.edge(chain.vertices[i], chain.vertices[i + 1]);
        if (a == nullptr) throw DomainError("chain " + chain_label(system, chain) + " uses a missing edge");
        t.atoms.push_back(*a);
    }
    return t;
}

FtfExpr derive_ftf_raw(const FuzzySystem& system) {
    std::vector<Term> terms;
    for (const Chain& c : enumerate_chains(system)) terms.push_back(chain_term(system, c));
    return sort_for_display(FtfExpr(std::move(terms)));
}

FtfExpr derive_ftf(const FuzzySystem& system) { return canonicalize(derive_ftf_raw(system)); }

ChainSpace::ChainSpace(unsigned degree, std::vector<std::string> items, NumericMatrix mu)
    : degree_(degree), items_(std::move(items)), mu_(std::move(mu)) {
    if (degree_ == 0) throw DomainError("chain degree must be at least 1");
    if (mu_.size() != items_.size()) {
        throw DomainError("transition matrix is " + std::to_string(mu_.size()) + "x" + std::to_string(mu_.size()) +
                          " but there are " + std::to_string(items_.size()) + " items");
    }
    mu_.set_names(items_);
}

ChainSpace point_space(std::vector<std::string> points, NumericMatrix mu) {
    return ChainSpace(1, std::move(points), std::move(mu));
}

ChainSpace lift_chain_space(std::vector<std::string> items, NumericMatrix mu, unsigned degree) {
    if (degree < 2) throw DomainError("lifted chain spaces have degree at least 2");
    return ChainSpace(degree, std::move(items), std::move(mu));
}

Membership chain_value(const ChainSpace& space, const std::vector<std::size_t>& seq) {
    if (seq.size() < 2) throw DomainError("a chain needs at least two items");
    for (std::size_t i : seq) {
        if (i >= space.size()) throw DomainError("item index " + std::to_string(i) + " out of range");
    }
    Membership v = Membership::one();
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) v = tnorm_min(v, space.mu().at(seq[i], seq[i + 1]));
    return v;
}

Membership best_chain_value(const ChainSpace& space, std::size_t from, std::size_t to) {
    if (from >= space.size() || to >= space.size()) throw DomainError("item index out of range");
    if (from == to) return Membership::one();
    NumericMatrix m = space.mu();
    for (std::size_t i = 0; i < m.size(); ++i) m.set(i, i, Membership::one());
    return warshall_closure(std::move(m)).at(from, to);
}

std::string sequence_label(const ChainSpace& space, const std::vector<std::size_t>& seq) {
    std::string out = "[";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i > 0) out += ' ';
        out += space.items().at(seq[i]);
    }
    return out + "]";
}

}  // namespace fuzzchain

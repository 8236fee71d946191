#include "fuzzchain/random.hpp"

#include <algorithm>
#include <utility>

namespace fuzzchain {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t suite, std::uint64_t index) {
    SplitMix64 mix(seed ^ (suite * 0x100000001b3ULL));
    for (std::uint64_t i = 0; i < 2; ++i) mix.next();
    return mix.next() + index * 0x9e3779b97f4a7c15ULL;
}

Membership grid_membership(SplitMix64& rng) { return Membership(static_cast<double>(rng.below(20)) / 19.0); }

NumericMatrix random_reflexive_matrix(SplitMix64& rng, std::size_t n) {
    NumericMatrix m = NumericMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Membership v = grid_membership(rng);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    return m;
}

NumericMatrix random_matrix(SplitMix64& rng, std::size_t n) {
    NumericMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m.set(i, j, grid_membership(rng));
    }
    return m;
}

std::vector<std::string> variable_pool(std::size_t count) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back("v" + std::to_string(i));
    return out;
}

Assignment random_assignment(SplitMix64& rng, const std::vector<std::string>& vars) {
    Assignment a;
    for (const auto& v : vars) a.set(v, grid_membership(rng));
    return a;
}

FtfExpr random_expr(SplitMix64& rng, const std::vector<std::string>& vars, std::size_t max_terms,
                    std::size_t max_atoms) {
    std::vector<Term> terms(1 + rng.below(max_terms));
    for (Term& t : terms) {
        std::size_t atoms = 1 + rng.below(max_atoms);
        for (std::size_t i = 0; i < atoms; ++i) t.atoms.push_back(Atom::var(vars[rng.below(vars.size())]));
    }
    return FtfExpr(std::move(terms));
}

SystemRegistry random_registry(SplitMix64& rng, const RandomRegistryOptions& options) {
    const auto vars = variable_pool(options.variables);
    const std::size_t systems = 1 + rng.below(options.max_systems);
    SystemRegistry registry;
    for (std::size_t s = 0; s < systems; ++s) {
        const std::string name = "s" + std::to_string(s);
        const std::size_t n = 2 + rng.below(options.max_vertices - 1);
        std::vector<std::string> vertices;
        for (std::size_t i = 0; i < n; ++i) vertices.push_back("n" + std::to_string(i));
        FuzzySystem system(name, vertices, vertices[0], vertices[1]);

        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
        }
        for (std::size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[rng.below(i)]);
        const std::size_t edge_count = 1 + rng.below(std::min(options.max_edges, pairs.size()));
        bool has_call = false;
        for (std::size_t e = 0; e < edge_count; ++e) {
            auto [u, v] = pairs[e];
            bool call = rng.chance(options.call_percent, 100);
            // Self-only systems always recurse at least once.
            if (options.self_calls_only && !has_call && e + 1 == edge_count) call = true;
            if (call) {
                has_call = true;
                std::string target = options.self_calls_only ? name : "s" + std::to_string(rng.below(systems));
                system.add_edge(vertices[u], vertices[v],
                                Atom::call(target, static_cast<unsigned>(rng.below(options.max_count + 1))));
            } else {
                system.add_edge(vertices[u], vertices[v], Atom::var(vars[rng.below(vars.size())]));
            }
        }
        registry.add(std::move(system));
    }
    return registry;
}

}  // namespace fuzzchain

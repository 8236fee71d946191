#include "fuzzchain/oracle.hpp"

#include <functional>

#include "fuzzchain/error.hpp"

namespace fuzzchain {

namespace {

std::vector<std::vector<std::pair<std::size_t, Membership>>> adjacency(std::size_t n,
                                                                        const std::vector<WeightedEdge>& edges) {
    std::vector<std::vector<std::pair<std::size_t, Membership>>> adj(n);
    for (const auto& e : edges) {
        adj.at(e.u).push_back({e.v, e.value});
        adj.at(e.v).push_back({e.u, e.value});
    }
    return adj;
}

Membership simple_paths(std::size_t n, const std::vector<WeightedEdge>& edges, std::size_t from, std::size_t to,
                        const std::function<bool(std::size_t)>& may_pass) {
    if (from == to) return Membership::one();
    auto adj = adjacency(n, edges);
    std::vector<bool> seen(n, false);
    Membership best = Membership::zero();
    std::function<void(std::size_t, Membership)> dfs = [&](std::size_t v, Membership so_far) {
        if (v == to) {
            best = snorm_max(best, so_far);
            return;
        }
        if (v != from && !may_pass(v)) return;
        seen[v] = true;
        for (auto [w, value] : adj[v]) {
            if (!seen[w]) dfs(w, tnorm_min(so_far, value));
        }
        seen[v] = false;
    };
    dfs(from, Membership::one());
    return best;
}

}  // namespace

Membership oracle_path_enum(std::size_t vertex_count, const std::vector<WeightedEdge>& edges, std::size_t from,
                            std::size_t to) {
    return simple_paths(vertex_count, edges, from, to, [](std::size_t) { return true; });
}

Membership oracle_directed_path(const NumericMatrix& m, std::size_t from, std::size_t to) {
    if (from == to) return Membership::one();
    std::vector<bool> seen(m.size(), false);
    Membership best = Membership::zero();
    std::function<void(std::size_t, Membership)> dfs = [&](std::size_t v, Membership so_far) {
        if (v == to) {
            best = snorm_max(best, so_far);
            return;
        }
        seen[v] = true;
        for (std::size_t w = 0; w < m.size(); ++w) {
            if (!seen[w]) dfs(w, tnorm_min(so_far, m.at(v, w)));
        }
        seen[v] = false;
    };
    dfs(from, Membership::one());
    return best;
}

Membership oracle_walk_enum(std::size_t vertex_count, const std::vector<WeightedEdge>& edges, std::size_t from,
                            std::size_t to, std::size_t max_edges) {
    // reach[v]: best value over walks from `from` to v with exactly `step` edges.
    std::vector<Membership> reach(vertex_count, Membership::zero());
    reach.at(from) = Membership::one();
    Membership best = reach.at(to);
    for (std::size_t step = 0; step < max_edges; ++step) {
        std::vector<Membership> next(vertex_count, Membership::zero());
        for (const auto& e : edges) {
            next[e.v] = snorm_max(next[e.v], tnorm_min(reach[e.u], e.value));
            next[e.u] = snorm_max(next[e.u], tnorm_min(reach[e.v], e.value));
        }
        reach = std::move(next);
        best = snorm_max(best, reach[to]);
    }
    return best;
}

std::vector<WeightedEdge> matrix_edges(const NumericMatrix& m) {
    std::vector<WeightedEdge> out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (m.at(i, j) != Membership::zero()) out.push_back({i, j, m.at(i, j)});
        }
    }
    return out;
}

Membership oracle_restricted_path(const NumericMatrix& m, std::size_t from, std::size_t to,
                                  std::optional<std::size_t> max_intermediate) {
    return simple_paths(m.size(), matrix_edges(m), from, to,
                        [&](std::size_t v) { return max_intermediate && v <= *max_intermediate; });
}

Membership oracle_unroll_eval(const SystemRegistry& registry, const std::string& name, const Assignment& assignment,
                              std::optional<unsigned> budget) {
    const FuzzySystem& system = registry.at(name);
    std::vector<WeightedEdge> edges;
    for (const Edge& e : system.edges()) {
        const Atom& a = e.label;
        Membership v = Membership::zero();
        if (a.is_var()) {
            auto bound = assignment.find(a.name());
            if (!bound) throw BindingError("missing binding for '" + a.name() + "'");
            v = *bound;
        } else {
            unsigned calls = budget ? std::min(a.count(), *budget) : a.count();
            if (calls > 0) v = oracle_unroll_eval(registry, a.name(), assignment, calls - 1);
        }
        edges.push_back({e.u, e.v, v});
    }
    return oracle_path_enum(system.vertex_count(), edges, system.input(), system.output());
}

Membership oracle_power_eval(const FtfExpr& e, unsigned k, const Assignment& assignment, const OracleLimits& limits) {
    if (k == 0 || k > limits.max_power) {
        throw DomainError("power oracle supports exponents 1.." + std::to_string(limits.max_power));
    }
    std::vector<Membership> term_values;
    for (const Term& t : e.terms()) {
        Membership v = Membership::one();
        for (const Atom& a : t.atoms) {
            if (!a.is_var()) throw DomainError("power oracle needs a call-free expression");
            auto bound = assignment.find(a.name());
            if (!bound) throw BindingError("missing binding for '" + a.name() + "'");
            v = tnorm_min(v, *bound);
        }
        term_values.push_back(v);
    }

    // Every way of writing k as n_1 + ... + n_m; the product uses term i iff n_i > 0.
    Membership best = Membership::zero();
    std::vector<unsigned> parts(term_values.size(), 0);
    std::function<void(std::size_t, unsigned)> compose = [&](std::size_t slot, unsigned left) {
        if (slot == parts.size()) {
            if (left != 0) return;
            Membership v = Membership::one();
            for (std::size_t i = 0; i < parts.size(); ++i) {
                for (unsigned r = 0; r < parts[i]; ++r) v = tnorm_min(v, term_values[i]);
            }
            best = snorm_max(best, v);
            return;
        }
        for (unsigned n = 0; n <= left; ++n) {
            parts[slot] = n;
            compose(slot + 1, left - n);
        }
    };
    compose(0, k);
    return best;
}

}  // namespace fuzzchain

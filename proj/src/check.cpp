#include "fuzzchain/check.hpp"

#include <algorithm>
#include <sstream>

#include "fuzzchain/chains.hpp"
#include "fuzzchain/closure.hpp"
#include "fuzzchain/error.hpp"
#include "fuzzchain/fixtures.hpp"
#include "fuzzchain/oracle.hpp"
#include "fuzzchain/random.hpp"
#include "fuzzchain/recursion.hpp"

namespace fuzzchain {

void SuiteResult::record(bool pass, const std::string& what) {
    ++total;
    if (pass) {
        ++passed;
    } else if (failures.size() < 5) {
        failures.push_back(what);
    }
}

namespace {

enum Suite : std::uint64_t {
    kCanonical = 1,
    kFtfTriangle,
    kDeepTriangle,
    kClosure,
    kPower,
    kRecursion,
    kLoopInvariant,
    kExpansion,
    kWalk,
    kChainSpace,
    kSelfCalls,
};

std::string str(Membership m) { return format_membership(m); }

std::string describe(const SystemRegistry& r, const Assignment& a) {
    std::ostringstream out;
    out << format_registry(r) << "assignment:";
    for (const auto& [k, v] : a.values()) out << ' ' << k << '=' << str(v);
    return out.str();
}

bool in_values(Membership m, const Assignment& a) {
    if (m == Membership::zero() || m == Membership::one()) return true;
    return std::any_of(a.values().begin(), a.values().end(), [&](const auto& kv) { return kv.second == m; });
}

// Variables used anywhere in the registry, with a random grade each.
Assignment assignment_for(SplitMix64& rng, const SystemRegistry& r) {
    std::vector<std::string> vars;
    for (const auto& s : r.systems()) {
        for (const Edge& e : s.edges()) {
            if (e.label.is_var()) vars.push_back(e.label.name());
        }
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return random_assignment(rng, vars);
}

}  // namespace

SuiteResult check_canonical(std::uint64_t seed, std::size_t trials) {
    SuiteResult res{"canonicalization preserves value", 0, 0, {}};
    const auto vars = variable_pool(5);
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng(trial_seed(seed, kCanonical, t));
        FtfExpr e = random_expr(rng, vars, 5, 4);
        FtfExpr plain = canonicalize(e, Simplify::No);
        FtfExpr simple = canonicalize(e, Simplify::Yes);
        bool ok = canonicalize(plain) == plain;
        for (int i = 0; i < 10 && ok; ++i) {
            Assignment a = random_assignment(rng, vars);
            Membership v = eval_expr(e, a);
            ok = eval_expr(plain, a) == v && eval_expr(simple, a) == v && in_values(v, a);
        }
        res.record(ok, format_expr(e, FormatMode::Raw));
    }
    return res;
}

SuiteResult check_ftf_triangle(std::uint64_t seed, std::size_t trials) {
    SuiteResult res{"derive_ftf / eval_system / path oracle", 0, 0, {}};
    RandomRegistryOptions opts;
    opts.max_systems = 1;
    opts.call_percent = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng(trial_seed(seed, kFtfTriangle, t));
        SystemRegistry r = random_registry(rng, opts);
        Assignment a = assignment_for(rng, r);
        const FuzzySystem& s = r.systems().front();
        std::vector<WeightedEdge> edges;
        for (const Edge& e : s.edges()) edges.push_back({e.u, e.v, *a.find(e.label.name())});
        Membership oracle = oracle_path_enum(s.vertex_count(), edges, s.input(), s.output());
        Membership symbolic = eval_expr(derive_ftf(s), a);
        Membership engine = eval_system(r, s.name(), a);
        res.record(oracle == symbolic && symbolic == engine,
                   describe(r, a) + "\noracle=" + str(oracle) + " ftf=" + str(symbolic) + " eval=" + str(engine));
    }
    return res;
}

SuiteResult check_deep_triangle(std::uint64_t seed, std::size_t trials) {
    SuiteResult res{"eval_system / transmission / oracles on deep systems", 0, 0, {}};
    RandomRegistryOptions opts;
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng(trial_seed(seed, kDeepTriangle, t));
        SystemRegistry r = random_registry(rng, opts);
        Assignment a = assignment_for(rng, r);
        bool ok = true;
        std::string detail;
        for (const auto& s : r.systems()) {
            Membership engine = eval_system(r, s.name(), a);
            Membership closed = transmission(r, s.name(), a);
            NumericMatrix resolved = resolve_matrix(r, s, a);
            Membership on_graph = oracle_path_enum(s.vertex_count(), matrix_edges(resolved), s.input(), s.output());
            Membership unrolled = oracle_unroll_eval(r, s.name(), a);
            if (!(engine == closed && closed == on_graph && on_graph == unrolled)) {
                ok = false;
                detail = s.name() + ": eval=" + str(engine) + " transmission=" + str(closed) +
                         " graph_oracle=" + str(on_graph) + " unroll=" + str(unrolled);
            }
        }
        res.record(ok, describe(r, a) + "\n" + detail);
    }
    return res;
}

SuiteResult check_closure(std::uint64_t seed, std::size_t trials) {
    SuiteResult res{"closure / path oracle / matrix power", 0, 0, {}};
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng(trial_seed(seed, kClosure, t));
        const std::size_t n = 1 + rng.below(8);
        NumericMatrix m = random_reflexive_matrix(rng, n);
        NumericMatrix closed = warshall_closure(m);
        auto edges = matrix_edges(m);
        bool ok = closed.is_symmetric() && closed.has_unit_diagonal() && warshall_closure(closed) == closed;
        for (std::size_t i = 0; i < n && ok; ++i) {
            for (std::size_t j = 0; j < n && ok; ++j) {
                ok = closed.at(i, j) == oracle_path_enum(n, edges, i, j) && !(closed.at(i, j) < m.at(i, j));
            }
        }
        ok = ok && matrix_power(m, static_cast<unsigned>(std::max<std::size_t>(1, n - 1))) == closed;
        res.record(ok, render_matrix(m));
    }
    return res;
}

SuiteResult check_power(std::uint64_t seed, std::size_t trials) {
    SuiteResult res{"power collapse / multinomial / power oracle", 0, 0, {}};
    const OracleLimits limits;
    const auto vars = variable_pool(5);
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng(trial_seed(seed, kPower, t));
        FtfExpr e = random_expr(rng, vars, limits.max_terms, 3);
        bool ok = true;
        std::string detail;
        for (int i = 0; i < 10 && ok; ++i) {
            Assignment a = random_assignment(rng, vars);
            Membership base = eval_expr(e, a);
            ok = oracle_power_eval(e, 1, a, limits) == base;
            for (unsigned k = 2; k <= limits.max_power && ok; ++k) {
                Membership powered = eval_expr(expr_power(e, k), a);
                Membership oracle = oracle_power_eval(e, k, a, limits);
                Membership expanded = Membership::zero();
                for (const auto& entry : multinomial_expand(e, k)) {
                    expanded = snorm_max(expanded, eval_expr(FtfExpr({entry.term}), a));
                }
                ok = powered == base && oracle == base && expanded == base;
                if (!ok) {
                    detail = "k=" + std::to_string(k) + " base=" + str(base) + " power=" + str(powered) +
                             " oracle=" + str(oracle) + " multinomial=" + str(expanded);
                }
            }
        }
        res.record(ok, format_expr(e, FormatMode::Raw) + " " + detail);
    }
    return res;
}

SuiteResult check_multinomial_coefficients() {
    SuiteResult res{"multinomial coefficients k!/prod(n_i!)", 0, 0, {}};
    auto fact = [](unsigned n) {
        unsigned long long f = 1;
        for (unsigned i = 2; i <= n; ++i) f *= i;
        return f;
    };
    for (unsigned parts = 1; parts <= 4; ++parts) {
        for (unsigned k = 1; k <= 4; ++k) {
            // Odometer over [0,k]^parts, keeping vectors that sum to k.
            std::vector<unsigned> c(parts, 0);
            while (true) {
                unsigned sum = 0;
                for (unsigned x : c) sum += x;
                if (sum == k) {
                    unsigned long long expected = fact(k);
                    for (unsigned x : c) expected /= fact(x);
                    BigInt got = multinomial_coefficient(k, c);
                    std::string label = "k=" + std::to_string(k) + " parts=";
                    for (unsigned x : c) label += std::to_string(x) + ",";
                    res.record(got == expected, label);
                }
                std::size_t i = 0;
                while (i < parts && ++c[i] > k) c[i++] = 0;
                if (i == parts) break;
            }
        }
    }
    return res;
}

SuiteResult check_recursion_laws(std::uint64_t seed, std::size_t trials) {
    SuiteResult res{"budget monotonicity / stabilisation / self-call collapse", 0, 0, {}};

    auto laws = [&](const SystemRegistry& r, const Assignment& a, bool self_only) {
        const unsigned kmax = r.max_declared_count();
        for (const auto& s : r.systems()) {
            std::vector<Membership> v;
            for (unsigned k = 0; k <= std::max(7u, kmax + 4); ++k) v.push_back(resolve_call(r, s.name(), CallBudget(k), a));
            Membership full = eval_system(r, s.name(), a);
            bool ok = true;
            for (unsigned k = 0; k < 6 && ok; ++k) ok = !(v[k + 1] < v[k]);
            for (unsigned k = kmax + 1; k < v.size() && ok; ++k) ok = v[k] == v[kmax + 1];
            ok = ok && full == v[kmax + 1];
            if (self_only) {
                for (unsigned k = 0; k < v.size() && ok; ++k) ok = v[k] == v[0];
                ok = ok && full == v[0];
            }
            std::string detail = s.name() + ":";
            for (auto m : v) detail += " " + str(m);
            res.record(ok, describe(r, a) + "\n" + detail);
        }
    };

    const SystemRegistry fixtures = builtin_fixtures();
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng(trial_seed(seed, kRecursion, t));
        if (t < 10) laws(fixtures, assignment_for(rng, fixtures), false);
        SystemRegistry r = random_registry(rng, RandomRegistryOptions{});
        laws(r, assignment_for(rng, r), false);
    }

    SystemRegistry rec;
    rec.add(builtin_fixtures().at("psi1_rec"));
    RandomRegistryOptions self;
    self.max_systems = 1;
    self.self_calls_only = true;
    self.call_percent = 40;
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng(trial_seed(seed, kSelfCalls, t));
        if (t < 10) laws(rec, assignment_for(rng, rec), true);
        SystemRegistry r = random_registry(rng, self);
        laws(r, assignment_for(rng, r), true);
    }
    return res;
}

SuiteResult check_loop_invariant(std::uint64_t seed, std::size_t trials) {
    SuiteResult res{"closure after pivot K == paths through vertices <= K", 0, 0, {}};
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng(trial_seed(seed, kLoopInvariant, t));
        const std::size_t n = 1 + rng.below(6);
        NumericMatrix m = random_reflexive_matrix(rng, n);
        bool ok = true;
        std::size_t pivots = 0;
        warshall_closure(m, [&](std::size_t k, const NumericMatrix& cur) {
            ++pivots;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (cur.at(i, j) != oracle_restricted_path(m, i, j, k)) ok = false;
                }
            }
        });
        res.record(ok && pivots == n, render_matrix(m));
    }
    return res;
}

SuiteResult check_expansion_and_trace(std::uint64_t seed, std::size_t trials) {
    SuiteResult res{"symbolic expansion and trace agree with eval_system", 0, 0, {}};
    RandomRegistryOptions opts;
    opts.max_vertices = 5;
    opts.max_edges = 6;
    opts.max_count = 2;
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng(trial_seed(seed, kExpansion, t));
        SystemRegistry r = random_registry(rng, opts);
        while (flat_term_count(*expansion_tree(r, "s0")) > 20000) r = random_registry(rng, opts);
        Assignment a = assignment_for(rng, r);
        Membership engine = eval_system(r, "s0", a);
        Membership symbolic = eval_expr(symbolic_expand(r, "s0"), a);
        auto [traced, trace] = trace_eval(r, "s0", a);
        res.record(engine == symbolic && engine == traced && trace.well_formed(),
                   describe(r, a) + "\neval=" + str(engine) + " expand=" + str(symbolic) + " trace=" + str(traced));
    }
    return res;
}

SuiteResult check_walk_reduction(std::uint64_t seed, std::size_t trials) {
    SuiteResult res{"simple chains match bounded walks", 0, 0, {}};
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng(trial_seed(seed, kWalk, t));
        const std::size_t n = 2 + rng.below(5);
        NumericMatrix m = random_reflexive_matrix(rng, n);
        auto edges = matrix_edges(m);
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            for (std::size_t j = 0; j < n && ok; ++j) {
                ok = oracle_path_enum(n, edges, i, j) == oracle_walk_enum(n, edges, i, j, 2 * n);
            }
        }
        // Same graph through the chain engine, terminals 0 -> 1.
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
        FuzzySystem s("walk", names, names[0], names[1]);
        Assignment a;
        for (const auto& e : edges) {
            std::string var = "e" + std::to_string(e.u) + "_" + std::to_string(e.v);
            s.add_edge(names[e.u], names[e.v], Atom::var(var));
            a.set(var, e.value);
        }
        ok = ok && eval_expr(derive_ftf(s), a) == oracle_walk_enum(n, edges, 0, 1, 2 * n);
        res.record(ok, render_matrix(m));
    }
    return res;
}

SuiteResult check_chain_space(std::uint64_t seed, std::size_t trials) {
    SuiteResult res{"best chain value / closure / sequence oracle", 0, 0, {}};
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng(trial_seed(seed, kChainSpace, t));
        const std::size_t n = 1 + rng.below(8);
        NumericMatrix mu = random_matrix(rng, n);
        std::vector<std::string> items;
        for (std::size_t i = 0; i < n; ++i) items.push_back("f" + std::to_string(i));
        ChainSpace space = lift_chain_space(items, mu, 2);
        NumericMatrix closed = warshall_closure(mu);
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            for (std::size_t j = 0; j < n && ok; ++j) {
                Membership best = best_chain_value(space, i, j);
                ok = best == oracle_directed_path(mu, i, j) && (i == j || best == closed.at(i, j));
            }
        }
        res.record(ok, render_matrix(mu));
    }
    return res;
}

std::vector<SuiteResult> run_all_checks(std::uint64_t seed, std::size_t trials) {
    return {
        check_canonical(seed, trials),
        check_ftf_triangle(seed, trials),
        check_deep_triangle(seed, trials),
        check_closure(seed, trials),
        check_power(seed, trials),
        check_multinomial_coefficients(),
        check_recursion_laws(seed, trials),
        check_loop_invariant(seed, trials),
        check_expansion_and_trace(seed, trials),
        check_walk_reduction(seed, trials),
        check_chain_space(seed, trials),
    };
}

}  // namespace fuzzchain

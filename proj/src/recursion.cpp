#include "fuzzchain/recursion.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "fuzzchain/error.hpp"

namespace fuzzchain {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) { return b > UINT64_MAX - a ? UINT64_MAX : a + b; }

Membership var_value(const Assignment& assignment, const Atom& a) {
    auto v = assignment.find(a.name());
    if (!v) throw BindingError("missing binding for '" + a.name() + "'");
    return *v;
}

bool single_char_var(const Atom& a) { return a.is_var() && a.name().size() == 1; }

// Joins rendered pieces: adjacent single-character variables are juxtaposed,
// other adjacent variables get '*', parenthesised call expansions attach directly.
struct RenderPiece {
    std::optional<Atom> var;
    std::string text;
};

std::string join_pieces(const std::vector<RenderPiece>& pieces) {
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i > 0 && pieces[i - 1].var && pieces[i].var &&
            !(single_char_var(*pieces[i - 1].var) && single_char_var(*pieces[i].var))) {
            out += '*';
        }
        out += pieces[i].text;
    }
    return out;
}

}  // namespace

std::string CallBudget::to_string() const { return depth_ ? std::to_string(*depth_) : "unbounded"; }

Evaluator::Evaluator(const SystemRegistry& registry, const Assignment& assignment)
    : registry_(registry), assignment_(assignment) {}

const std::vector<Chain>& Evaluator::chains(const FuzzySystem& system) {
    auto it = chains_.find(system.name());
    if (it == chains_.end()) it = chains_.emplace(system.name(), enumerate_chains(system)).first;
    return it->second;
}

Membership Evaluator::atom_value(const Atom& atom, CallBudget budget) {
    if (atom.is_var()) return var_value(assignment_, atom);
    unsigned effective = budget.effective(atom.count());
    if (effective == 0) return Membership::zero();
    return body_value(atom.name(), CallBudget(effective - 1));
}

Membership Evaluator::body_value(const std::string& name, CallBudget budget) {
    auto key = std::make_pair(name, budget);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const FuzzySystem& system = registry_.at(name);
    Membership best = Membership::zero();
    for (const Chain& c : chains(system)) {
        Membership v = Membership::one();
        for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i) {
            v = tnorm_min(v, atom_value(*system.edge(c.vertices[i], c.vertices[i + 1]), budget));
        }
        best = snorm_max(best, v);
    }
    memo_.emplace(std::move(key), best);
    return best;
}

Membership resolve_call(const SystemRegistry& registry, const std::string& name, CallBudget k,
                        const Assignment& assignment) {
    return Evaluator(registry, assignment).body_value(name, k);
}

Membership call_value(const SystemRegistry& registry, const std::string& target, unsigned count,
                      const Assignment& assignment) {
    if (count == 0) return Membership::zero();
    return Evaluator(registry, assignment).body_value(target, CallBudget(count - 1));
}

Membership eval_system(const SystemRegistry& registry, const std::string& name, const Assignment& assignment) {
    return Evaluator(registry, assignment).body_value(name, CallBudget::unbounded());
}

// Symbolic expansion.

namespace {

class TreeBuilder {
public:
    explicit TreeBuilder(const SystemRegistry& registry) : registry_(registry) {}

    std::shared_ptr<const ExpansionNode> build(const std::string& name, CallBudget budget) {
        auto key = std::make_pair(name, budget);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        const FuzzySystem& system = registry_.at(name);
        auto node = std::make_shared<ExpansionNode>();
        node->system = name;
        node->budget = budget;
        for (const Chain& c : enumerate_chains(system)) {
            ExpansionBranch branch{c, chain_label(system, c), chain_term(system, c), {}};
            bool live = true;
            for (const Atom& a : branch.skeleton.atoms) {
                if (a.is_var()) {
                    branch.pieces.push_back({a, nullptr});
                    continue;
                }
                unsigned effective = budget.effective(a.count());
                if (effective == 0) {
                    live = false;
                    break;
                }
                auto callee = build(a.name(), CallBudget(effective - 1));
                if (callee->branches.empty()) {
                    live = false;
                    break;
                }
                branch.pieces.push_back({std::nullopt, std::move(callee)});
            }
            if (live) node->branches.push_back(std::move(branch));
        }
        std::stable_sort(node->branches.begin(), node->branches.end(),
                         [](const ExpansionBranch& a, const ExpansionBranch& b) {
                             return display_less(a.skeleton, b.skeleton);
                         });
        memo_.emplace(std::move(key), node);
        return node;
    }

private:
    const SystemRegistry& registry_;
    std::map<std::pair<std::string, CallBudget>, std::shared_ptr<const ExpansionNode>> memo_;
};

class Flattener {
public:
    explicit Flattener(std::uint64_t max_terms) : max_terms_(max_terms) {}

    std::uint64_t count(const ExpansionNode& node) {
        if (auto it = counts_.find(&node); it != counts_.end()) return it->second;
        std::uint64_t total = 0;
        for (const auto& b : node.branches) total = saturating_add(total, branch_count(b));
        counts_.emplace(&node, total);
        return total;
    }

    std::uint64_t branch_count(const ExpansionBranch& b) {
        std::uint64_t n = 1;
        for (const auto& p : b.pieces) {
            if (p.call) n = saturating_mul(n, count(*p.call));
        }
        return n;
    }

    const FtfExpr& flatten(const ExpansionNode& node) {
        if (auto it = flat_.find(&node); it != flat_.end()) return it->second;
        if (count(node) > max_terms_) {
            throw DomainError("expansion of " + node.system + " has " + std::to_string(count(node)) +
                              " terms, more than the limit of " + std::to_string(max_terms_));
        }
        FtfExpr all;
        for (const auto& b : node.branches) all = expr_union(all, flatten_branch(b));
        return flat_.emplace(&node, sort_for_display(std::move(all))).first->second;
    }

    FtfExpr flatten_branch(const ExpansionBranch& b) {
        FtfExpr e = FtfExpr::one();
        for (const auto& p : b.pieces) e = expr_concat(e, p.call ? flatten(*p.call) : FtfExpr::atom(*p.var));
        return e;
    }

private:
    std::uint64_t max_terms_;
    std::unordered_map<const ExpansionNode*, std::uint64_t> counts_;
    std::unordered_map<const ExpansionNode*, FtfExpr> flat_;
};

}  // namespace

std::shared_ptr<const ExpansionNode> expansion_tree(const SystemRegistry& registry, const std::string& name) {
    return TreeBuilder(registry).build(name, CallBudget::unbounded());
}

std::uint64_t flat_term_count(const ExpansionNode& node) { return Flattener(0).count(node); }

FtfExpr flatten(const ExpansionNode& node, std::uint64_t max_terms) { return Flattener(max_terms).flatten(node); }

FtfExpr symbolic_expand(const SystemRegistry& registry, const std::string& name) {
    return flatten(*expansion_tree(registry, name));
}

std::string render_expansion(const ExpansionNode& node) {
    if (node.branches.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < node.branches.size(); ++i) {
        if (i > 0) out += " + ";
        std::vector<RenderPiece> pieces;
        for (const auto& p : node.branches[i].pieces) {
            if (p.call) {
                pieces.push_back({std::nullopt, "(" + render_expansion(*p.call) + ")"});
            } else {
                pieces.push_back({p.var, p.var->to_string()});
            }
        }
        out += pieces.empty() ? "1" : join_pieces(pieces);
    }
    return out;
}

// Traced evaluation.

bool EvalTrace::well_formed() const {
    std::vector<const TraceEvent*> stack;
    for (const auto& e : events_) {
        switch (e.kind) {
            case TraceEvent::Kind::Enter:
            case TraceEvent::Kind::PushReturn:
                stack.push_back(&e);
                break;
            case TraceEvent::Kind::Exit:
                if (stack.empty() || stack.back()->kind != TraceEvent::Kind::Enter ||
                    stack.back()->system != e.system) {
                    return false;
                }
                stack.pop_back();
                break;
            case TraceEvent::Kind::PopReturn:
                if (stack.empty() || stack.back()->kind != TraceEvent::Kind::PushReturn ||
                    stack.back()->label != e.label) {
                    return false;
                }
                stack.pop_back();
                break;
            case TraceEvent::Kind::BranchResult:
                break;
        }
    }
    return stack.empty();
}

std::string EvalTrace::render() const {
    std::ostringstream out;
    for (const auto& e : events_) {
        out << std::string(2 * e.depth, ' ');
        switch (e.kind) {
            case TraceEvent::Kind::Enter:
                out << "ENTER system=" << e.system << " budget=" << e.budget.to_string();
                break;
            case TraceEvent::Kind::PushReturn:
                out << "PUSH return=" << e.label;
                break;
            case TraceEvent::Kind::PopReturn:
                out << "POP return=" << e.label;
                break;
            case TraceEvent::Kind::BranchResult:
                out << "BRANCH chain=" << e.chain << " expr=" << e.expr << " value=" << format_membership(e.value);
                break;
            case TraceEvent::Kind::Exit:
                out << "EXIT system=" << e.system << " value=" << format_membership(e.value);
                break;
        }
        out << '\n';
    }
    return out.str();
}

namespace {

struct TracedBranch {
    std::string label;
    Term skeleton;
    Membership value;
    std::uint64_t count = 1;
    std::optional<FtfExpr> flat;
};

struct TracedBody {
    Membership value;
    std::vector<TracedBranch> live;
    std::uint64_t count = 0;
    std::optional<FtfExpr> flat;
};

class Tracer {
public:
    Tracer(const SystemRegistry& registry, const Assignment& assignment, const TraceOptions& options)
        : registry_(registry), assignment_(assignment), options_(options) {}

    const TracedBody& visit(const std::string& name, CallBudget budget, std::size_t depth) {
        emit({TraceEvent::Kind::Enter, depth, name, budget, {}, {}, {}, {}});
        auto key = std::make_pair(name, budget);
        if (auto it = memo_.find(key); it != memo_.end()) {
            emit({TraceEvent::Kind::Exit, depth, name, budget, {}, {}, {}, it->second.value});
            return it->second;
        }

        const FuzzySystem& system = registry_.at(name);
        TracedBody body;
        for (const Chain& c : enumerate_chains(system)) {
            if (auto b = run_chain(system, c, budget, depth + 1)) body.live.push_back(std::move(*b));
        }
        std::stable_sort(body.live.begin(), body.live.end(), [](const TracedBranch& a, const TracedBranch& b) {
            return display_less(a.skeleton, b.skeleton);
        });
        FtfExpr all;
        bool complete = true;
        for (const auto& b : body.live) {
            body.value = snorm_max(body.value, b.value);
            body.count = saturating_add(body.count, b.count);
            if (b.flat) {
                all = expr_union(all, *b.flat);
            } else {
                complete = false;
            }
        }
        if (complete && body.count <= options_.max_terms) body.flat = sort_for_display(std::move(all));

        emit({TraceEvent::Kind::Exit, depth, name, budget, {}, {}, {}, body.value});
        return memo_.emplace(std::move(key), std::move(body)).first->second;
    }

private:
    // Runs one chain of a body; nullopt when it passes through an exhausted call.
    std::optional<TracedBranch> run_chain(const FuzzySystem& system, const Chain& c, CallBudget budget,
                                          std::size_t depth) {
        const Term skeleton = chain_term(system, c);
        const std::string label = chain_label(system, c);

        bool exhausted = std::any_of(skeleton.atoms.begin(), skeleton.atoms.end(), [&](const Atom& a) {
            return a.is_call() && budget.effective(a.count()) == 0;
        });
        if (exhausted) {
            emit({TraceEvent::Kind::BranchResult, depth, system.name(), budget, {}, label, "0", Membership::zero()});
            return std::nullopt;
        }

        Membership vars = Membership::one();
        std::vector<const TracedBody*> callees;
        for (std::size_t i = 0; i < skeleton.atoms.size(); ++i) {
            const Atom& a = skeleton.atoms[i];
            if (a.is_var()) {
                vars = tnorm_min(vars, var_value(assignment_, a));
                continue;
            }
            std::string ret = i + 1 < skeleton.atoms.size() ? skeleton.atoms[i + 1].to_string()
                                                             : system.vertices()[c.vertices.back()];
            emit({TraceEvent::Kind::PushReturn, depth, system.name(), budget, ret, {}, {}, {}});
            callees.push_back(&visit(a.name(), CallBudget(budget.effective(a.count()) - 1), depth + 1));
            emit({TraceEvent::Kind::PopReturn, depth, system.name(), budget, ret, {}, {}, {}});
        }

        if (std::any_of(callees.begin(), callees.end(), [](const TracedBody* b) { return b->live.empty(); })) {
            emit({TraceEvent::Kind::BranchResult, depth, system.name(), budget, {}, label, "0", Membership::zero()});
            return std::nullopt;
        }

        TracedBranch out{label, skeleton, vars, 1, std::nullopt};
        std::uint64_t combos = 1;
        for (const TracedBody* b : callees) {
            out.value = tnorm_min(out.value, b->value);
            out.count = saturating_mul(out.count, b->count);
            combos = saturating_mul(combos, b->live.size());
        }
        if (out.count <= options_.max_terms) {
            FtfExpr e = FtfExpr::one();
            std::size_t k = 0;
            for (const Atom& a : skeleton.atoms) {
                e = expr_concat(e, a.is_var() ? FtfExpr::atom(a) : *callees[k++]->flat);
            }
            out.flat = sort_for_display(std::move(e));
        }

        if (!callees.empty() && combos <= options_.max_combinations) emit_combinations(system, skeleton, label, vars, callees, depth);
        emit({TraceEvent::Kind::BranchResult, depth, system.name(), budget, {}, label, describe(out.flat, out.count),
              out.value});
        return out;
    }

    // One line per choice of a live callee chain at every call of the chain.
    void emit_combinations(const FuzzySystem& system, const Term& skeleton, const std::string& label, Membership vars,
                           const std::vector<const TracedBody*>& callees, std::size_t depth) {
        std::vector<std::size_t> pick(callees.size(), 0);
        while (true) {
            Membership v = vars;
            std::string chosen;
            std::vector<RenderPiece> pieces;
            std::size_t k = 0;
            for (const Atom& a : skeleton.atoms) {
                if (a.is_var()) {
                    pieces.push_back({a, a.to_string()});
                    continue;
                }
                const TracedBranch& b = callees[k]->live[pick[k]];
                v = tnorm_min(v, b.value);
                if (k > 0) chosen += ',';
                chosen += b.label;
                pieces.push_back({std::nullopt, "(" + describe(b.flat, b.count) + ")"});
                ++k;
            }
            emit({TraceEvent::Kind::BranchResult, depth, system.name(), CallBudget::unbounded(), {},
                  label + "[" + chosen + "]", join_pieces(pieces), v});

            std::size_t i = pick.size();
            while (i > 0) {
                --i;
                if (++pick[i] < callees[i]->live.size()) break;
                pick[i] = 0;
                if (i == 0) return;
            }
        }
    }

    static std::string describe(const std::optional<FtfExpr>& flat, std::uint64_t count) {
        if (flat) return format_expr(*flat, FormatMode::Paper);
        return "<" + (count == UINT64_MAX ? std::string("many") : std::to_string(count)) + " terms>";
    }

    void emit(TraceEvent e) { trace_.push(std::move(e)); }

public:
    EvalTrace trace_;

private:
    const SystemRegistry& registry_;
    const Assignment& assignment_;
    TraceOptions options_;
    std::map<std::pair<std::string, CallBudget>, TracedBody> memo_;
};

}  // namespace

std::pair<Membership, EvalTrace> trace_eval(const SystemRegistry& registry, const std::string& name,
                                            const Assignment& assignment, const TraceOptions& options) {
    Tracer tracer(registry, assignment, options);
    Membership v = tracer.visit(name, CallBudget::unbounded(), 0).value;
    return {v, std::move(tracer.trace_)};
}

}  // namespace fuzzchain

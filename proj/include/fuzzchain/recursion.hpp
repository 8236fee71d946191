#pragma once

// Deep systems: edges that call other systems with a budget.
//
// A system body evaluated at budget b takes the best chain, where a chain's
// value is the min of its edge values. A call edge declared with count m has
// effective count c = min(m, b) (just m for an unbounded body). With c == 0 the
// call is exhausted and its chain contributes nothing; otherwise the callee's
// body runs at budget c - 1. Budgets therefore shrink by one per nesting level
// and every expansion terminates.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuzzchain/chains.hpp"
#include "fuzzchain/expr.hpp"
#include "fuzzchain/system.hpp"

namespace fuzzchain {

class CallBudget {
public:
    static CallBudget unbounded() { return CallBudget(); }
    explicit CallBudget(unsigned depth) : depth_(depth) {}

    bool is_unbounded() const { return !depth_.has_value(); }
    /// Only meaningful when bounded.
    unsigned depth() const { return depth_.value_or(0); }

    /// Effective count of a call declared with `declared`, made from a body at this budget.
    unsigned effective(unsigned declared) const { return depth_ ? std::min(declared, *depth_) : declared; }

    /// "unbounded" or the depth.
    std::string to_string() const;

    auto operator<=>(const CallBudget& other) const { return key() <=> other.key(); }
    bool operator==(const CallBudget& other) const { return key() == other.key(); }

private:
    CallBudget() = default;
    std::uint64_t key() const { return depth_ ? *depth_ : UINT64_MAX; }

    std::optional<unsigned> depth_;
};

/// Memoised numeric evaluation of bodies per (system, budget) for one assignment.
class Evaluator {
public:
    Evaluator(const SystemRegistry& registry, const Assignment& assignment);

    /// Value of the system's body at the given budget. Throws ValidationError for
    /// unknown systems and BindingError for unbound variables.
    Membership body_value(const std::string& system, CallBudget budget);

    /// Value of an edge label inside a body at `budget`.
    Membership atom_value(const Atom& atom, CallBudget budget);

private:
    const std::vector<Chain>& chains(const FuzzySystem& system);

    const SystemRegistry& registry_;
    const Assignment& assignment_;
    std::map<std::pair<std::string, CallBudget>, Membership> memo_;
    std::map<std::string, std::vector<Chain>> chains_;
};

/// Body of `name` at budget k: with k == 0 only call-free chains count.
Membership resolve_call(const SystemRegistry& registry, const std::string& name, CallBudget k,
                        const Assignment& assignment);

/// Value of a top-level call edge declared with `count`: 0 when count is 0,
/// otherwise the target's body at budget count - 1.
Membership call_value(const SystemRegistry& registry, const std::string& target, unsigned count,
                      const Assignment& assignment);

/// The system's body with every call at its full declared count.
Membership eval_system(const SystemRegistry& registry, const std::string& name, const Assignment& assignment);

// Symbolic expansion.

struct ExpansionNode;

/// A variable, or an expanded call.
struct ExpansionPiece {
    std::optional<Atom> var;
    std::shared_ptr<const ExpansionNode> call;
};

struct ExpansionBranch {
    Chain chain;
    std::string label;
    /// Edge labels along the chain (calls as declared).
    Term skeleton;
    std::vector<ExpansionPiece> pieces;
};

/// A system body at a budget. Only live branches are kept; nodes are shared.
struct ExpansionNode {
    std::string system;
    CallBudget budget = CallBudget::unbounded();
    std::vector<ExpansionBranch> branches;
};

/// Expansion DAG of the named system at an unbounded budget.
std::shared_ptr<const ExpansionNode> expansion_tree(const SystemRegistry& registry, const std::string& name);

/// Number of sum-of-products terms the node flattens to (saturating).
std::uint64_t flat_term_count(const ExpansionNode& node);

/// Flattened raw expression, sorted for display. Throws DomainError when it
/// would exceed `max_terms`.
FtfExpr flatten(const ExpansionNode& node, std::uint64_t max_terms = 1'000'000);

/// Call-free expression for the named system: each call replaced by the
/// callee's expansion at its effective budget, exhausted calls dropped.
FtfExpr symbolic_expand(const SystemRegistry& registry, const std::string& name);

/// Nested rendering, e.g. "xz + x(xz + yw)w + yw + y(xz + yw)z".
std::string render_expansion(const ExpansionNode& node);

// Stack-traced evaluation.

struct TraceEvent {
    enum class Kind { Enter, PushReturn, PopReturn, BranchResult, Exit };
    Kind kind;
    /// Call nesting depth at which the event happened.
    std::size_t depth = 0;
    std::string system;
    CallBudget budget = CallBudget::unbounded();
    /// Return point label for push/pop.
    std::string label;
    std::string chain;
    std::string expr;
    Membership value;
};

class EvalTrace {
public:
    void push(TraceEvent e) { events_.push_back(std::move(e)); }
    const std::vector<TraceEvent>& events() const { return events_; }

    /// Push/Pop LIFO-balanced with matching labels, every Enter closed by an Exit.
    bool well_formed() const;

    /// One event per line, indented two spaces per nesting level:
    ///   ENTER system=psi1_rec budget=unbounded
    ///   PUSH return=z
    ///   BRANCH chain=A-D-C-B expr=xxzw + xyww value=0.6
    ///   POP return=z
    ///   EXIT system=psi1_rec value=0.6
    std::string render() const;

private:
    std::vector<TraceEvent> events_;
};

struct TraceOptions {
    /// Expressions larger than this are shown as "<N terms>".
    std::uint64_t max_terms = 64;
    /// Per-combination branch lines are listed only up to this many per chain.
    std::uint64_t max_combinations = 64;
};

/// Evaluates like eval_system while recording the call stack. Each body is
/// expanded once per budget; repeated calls show only Enter/Exit.
///
/// For a chain through calls the trace lists one BRANCH per choice of callee
/// chains, labelled "A-C-D-B[A-D-C-B]" with the chosen callee chain flattened in
/// parentheses, followed by the chain's own BRANCH with its full expansion.
std::pair<Membership, EvalTrace> trace_eval(const SystemRegistry& registry, const std::string& name,
                                            const Assignment& assignment, const TraceOptions& options = {});

}  // namespace fuzzchain

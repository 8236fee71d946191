#pragma once

// Sum-of-products transmission expressions over the max-min algebra.
// A Term is a concatenation (min) of atoms; an FtfExpr is a union (max) of
// terms. The empty term denotes 1 and the empty expression denotes 0.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fuzzchain/membership.hpp"

namespace fuzzchain {

using BigInt = boost::multiprecision::cpp_int;

bool is_identifier(std::string_view text);

/// Edge label: a membership variable, or a budget-counted call to a named system.
class Atom {
public:
    static Atom var(std::string name);
    static Atom call(std::string target, unsigned count);

    bool is_var() const { return kind_ == Kind::Var; }
    bool is_call() const { return kind_ == Kind::Call; }
    /// Variable name, or call target.
    const std::string& name() const { return name_; }
    /// Declared call count; 0 for variables.
    unsigned count() const { return count_; }

    /// "x" or "psi1^2".
    std::string to_string() const;

    // Orders variables before calls, then by name, then by count.
    auto operator<=>(const Atom&) const = default;

private:
    enum class Kind : std::uint8_t { Var = 0, Call = 1 };
    Atom(Kind kind, std::string name, unsigned count)
        : kind_(kind), name_(std::move(name)), count_(count) {}

    Kind kind_;
    std::string name_;
    unsigned count_;
};

struct Term {
    std::vector<Atom> atoms;

    auto operator<=>(const Term&) const = default;
};

class FtfExpr {
public:
    FtfExpr() = default;
    explicit FtfExpr(std::vector<Term> terms) : terms_(std::move(terms)) {}

    static FtfExpr zero() { return FtfExpr(); }
    static FtfExpr one() { return FtfExpr({Term{}}); }
    static FtfExpr atom(Atom a) { return FtfExpr({Term{{std::move(a)}}}); }

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool operator==(const FtfExpr&) const = default;

private:
    std::vector<Term> terms_;
};

/// Variable name -> grade.
class Assignment {
public:
    void set(const std::string& name, Membership value) { values_[name] = value; }
    std::optional<Membership> find(const std::string& name) const;
    const std::map<std::string, Membership>& values() const { return values_; }
    bool operator==(const Assignment&) const = default;

private:
    std::map<std::string, Membership> values_;
};

/// Parses "name=value".
std::pair<std::string, Membership> parse_binding(const std::string& text);

/// Lines of "<var> = <decimal>"; '#' starts a comment.
Assignment parse_assignment(std::string_view text);

/// Returns nullopt when the atom has no value.
using Valuation = std::function<std::optional<Membership>(const Atom&)>;

/// Max over terms of min over atoms. Throws BindingError naming the first atom without a value.
Membership eval_expr(const FtfExpr& e, const Valuation& valuation);
/// Variables only; any call atom is a missing binding.
Membership eval_expr(const FtfExpr& e, const Assignment& assignment);

FtfExpr expr_union(const FtfExpr& a, const FtfExpr& b);
/// Cross product of terms; atom lists are appended in order.
FtfExpr expr_concat(const FtfExpr& a, const FtfExpr& b);

enum class Simplify : bool { No = false, Yes = true };

/// Sorted, duplicate-free atoms.
Term canonical_term(const Term& t);
/// Canonical terms, sorted and deduplicated; with Simplify::Yes any term whose
/// atom set contains another term's atom set is dropped (a + ab = a).
FtfExpr canonicalize(const FtfExpr& e, Simplify simplify = Simplify::No);

/// Display ordering for raw terms: by leading atom, then shorter first, then
/// the remaining atoms. Keeps duplicated atoms and their order.
bool display_less(const Term& a, const Term& b);
FtfExpr sort_for_display(FtfExpr e);

/// k-fold self-concatenation, canonicalized. Throws DomainError for k == 0.
FtfExpr expr_power(const FtfExpr& e, unsigned k);

/// k! / prod(parts[i]!). Throws DomainError when the parts do not sum to k.
BigInt multinomial_coefficient(unsigned k, const std::vector<unsigned>& parts);

struct MultinomialEntry {
    std::vector<unsigned> composition;
    BigInt coefficient;
    /// Canonical concatenation of term i repeated composition[i] times.
    Term term;
};

/// One entry per composition of k into e.size() non-negative parts, first part
/// descending. The coefficients are reported only; under max-min they never
/// change the value.
std::vector<MultinomialEntry> multinomial_expand(const FtfExpr& e, unsigned k);

enum class FormatMode { Raw, Canonical, Paper };

/// Terms joined by " + ", atoms by '*'. Paper mode juxtaposes adjacent
/// single-character variables ("xz + x*xbar*w"). Empty expression prints "0",
/// empty term prints "1". Canonical mode canonicalizes first.
std::string format_expr(const FtfExpr& e, FormatMode mode = FormatMode::Canonical);
std::string format_term(const Term& t, FormatMode mode = FormatMode::Canonical);

/// Grammar: terms separated by '+', atoms by '*', calls as name^count.
/// "0" is the empty expression and "1" the empty term. Whitespace is ignored.
FtfExpr parse_expr(std::string_view text);

}  // namespace fuzzchain

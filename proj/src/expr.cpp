#include "fuzzchain/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "fuzzchain/error.hpp"

namespace fuzzchain {

bool is_identifier(std::string_view text) {
    if (text.empty()) return false;
    auto head = static_cast<unsigned char>(text.front());
    if (!(std::isalpha(head) || head == '_')) return false;
    return std::all_of(text.begin() + 1, text.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

Atom Atom::var(std::string name) {
    if (!is_identifier(name)) throw DomainError("invalid variable name '" + name + "'");
    return Atom(Kind::Var, std::move(name), 0);
}

Atom Atom::call(std::string target, unsigned count) {
    if (!is_identifier(target)) throw DomainError("invalid system name '" + target + "'");
    return Atom(Kind::Call, std::move(target), count);
}

std::string Atom::to_string() const {
    if (is_var()) return name_;
    return name_ + "^" + std::to_string(count_);
}

std::optional<Membership> Assignment::find(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::pair<std::string, Membership> parse_binding(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos) throw BindingError("binding '" + text + "' is not of the form name=value");
    std::string name(trim(std::string_view(text).substr(0, eq)));
    std::string value(trim(std::string_view(text).substr(eq + 1)));
    if (!is_identifier(name)) throw BindingError("invalid variable name '" + name + "' in binding");
    return {name, parse_membership(value)};
}

Assignment parse_assignment(std::string_view text) {
    Assignment out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected '<var> = <value>'", line_no, 1);
        std::string name(trim(line.substr(0, eq)));
        if (!is_identifier(name)) throw ParseError("invalid variable name '" + name + "'", line_no, 1);
        try {
            out.set(name, parse_membership(std::string(trim(line.substr(eq + 1)))));
        } catch (const BindingError& e) {
            throw ParseError(e.what(), line_no, eq + 2);
        }
    }
    return out;
}

Membership eval_expr(const FtfExpr& e, const Valuation& valuation) {
    Membership best = Membership::zero();
    for (const Term& t : e.terms()) {
        Membership chain = Membership::one();
        for (const Atom& a : t.atoms) {
            auto v = valuation(a);
            if (!v) throw BindingError("missing binding for '" + a.to_string() + "'");
            chain = tnorm_min(chain, *v);
        }
        best = snorm_max(best, chain);
    }
    return best;
}

Membership eval_expr(const FtfExpr& e, const Assignment& assignment) {
    return eval_expr(e, [&](const Atom& a) -> std::optional<Membership> {
        if (!a.is_var()) return std::nullopt;
        return assignment.find(a.name());
    });
}

FtfExpr expr_union(const FtfExpr& a, const FtfExpr& b) {
    std::vector<Term> terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return FtfExpr(std::move(terms));
}

FtfExpr expr_concat(const FtfExpr& a, const FtfExpr& b) {
    std::vector<Term> terms;
    terms.reserve(a.size() * b.size());
    for (const Term& ta : a.terms()) {
        for (const Term& tb : b.terms()) {
            Term t = ta;
            t.atoms.insert(t.atoms.end(), tb.atoms.begin(), tb.atoms.end());
            terms.push_back(std::move(t));
        }
    }
    return FtfExpr(std::move(terms));
}

Term canonical_term(const Term& t) {
    Term out = t;
    std::sort(out.atoms.begin(), out.atoms.end());
    out.atoms.erase(std::unique(out.atoms.begin(), out.atoms.end()), out.atoms.end());
    return out;
}

FtfExpr canonicalize(const FtfExpr& e, Simplify simplify) {
    std::vector<Term> terms;
    terms.reserve(e.size());
    for (const Term& t : e.terms()) terms.push_back(canonical_term(t));
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    if (simplify == Simplify::No) return FtfExpr(std::move(terms));

    std::vector<Term> kept;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        bool absorbed = false;
        for (std::size_t j = 0; j < terms.size() && !absorbed; ++j) {
            if (i == j) continue;
            // Terms are distinct here, so inclusion is strict.
            absorbed = std::includes(terms[i].atoms.begin(), terms[i].atoms.end(),
                                     terms[j].atoms.begin(), terms[j].atoms.end());
        }
        if (!absorbed) kept.push_back(terms[i]);
    }
    return FtfExpr(std::move(kept));
}

bool display_less(const Term& a, const Term& b) {
    if (a.atoms.empty() || b.atoms.empty()) return a.atoms.size() < b.atoms.size();
    if (a.atoms.front() != b.atoms.front()) return a.atoms.front() < b.atoms.front();
    if (a.atoms.size() != b.atoms.size()) return a.atoms.size() < b.atoms.size();
    return a.atoms < b.atoms;
}

FtfExpr sort_for_display(FtfExpr e) {
    std::vector<Term> terms = e.terms();
    std::stable_sort(terms.begin(), terms.end(), display_less);
    return FtfExpr(std::move(terms));
}

FtfExpr expr_power(const FtfExpr& e, unsigned k) {
    if (k == 0) throw DomainError("undefined power: exponent must be at least 1");
    FtfExpr base = canonicalize(e);
    FtfExpr acc = base;
    for (unsigned i = 1; i < k; ++i) acc = canonicalize(expr_concat(acc, base));
    return acc;
}

namespace {

BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

void compositions(unsigned remaining, std::size_t slot, std::vector<unsigned>& current,
                  std::vector<std::vector<unsigned>>& out) {
    if (slot + 1 == current.size()) {
        current[slot] = remaining;
        out.push_back(current);
        return;
    }
    for (unsigned n = remaining + 1; n-- > 0;) {
        current[slot] = n;
        compositions(remaining - n, slot + 1, current, out);
    }
}

}  // namespace

BigInt multinomial_coefficient(unsigned k, const std::vector<unsigned>& parts) {
    unsigned long long sum = 0;
    for (unsigned p : parts) sum += p;
    if (sum != k) throw DomainError("invalid composition: parts sum to " + std::to_string(sum) +
                                    ", expected " + std::to_string(k));
    BigInt denom = 1;
    for (unsigned p : parts) denom *= factorial(p);
    return factorial(k) / denom;
}

std::vector<MultinomialEntry> multinomial_expand(const FtfExpr& e, unsigned k) {
    if (k == 0) throw DomainError("undefined power: exponent must be at least 1");
    if (e.empty()) return {};
    std::vector<std::vector<unsigned>> comps;
    std::vector<unsigned> current(e.size(), 0);
    compositions(k, 0, current, comps);

    std::vector<MultinomialEntry> out;
    out.reserve(comps.size());
    for (auto& c : comps) {
        Term t;
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (unsigned r = 0; r < c[i]; ++r) {
                const auto& atoms = e.terms()[i].atoms;
                t.atoms.insert(t.atoms.end(), atoms.begin(), atoms.end());
            }
        }
        BigInt coef = multinomial_coefficient(k, c);
        out.push_back({std::move(c), std::move(coef), canonical_term(t)});
    }
    return out;
}

std::string format_term(const Term& t, FormatMode mode) {
    const Term& shown = mode == FormatMode::Canonical ? canonical_term(t) : t;
    if (shown.atoms.empty()) return "1";
    auto single = [](const Atom& a) { return a.is_var() && a.name().size() == 1; };
    std::string out;
    for (std::size_t i = 0; i < shown.atoms.size(); ++i) {
        if (i > 0) {
            bool juxtapose = mode == FormatMode::Paper && single(shown.atoms[i - 1]) && single(shown.atoms[i]);
            if (!juxtapose) out += '*';
        }
        out += shown.atoms[i].to_string();
    }
    return out;
}

std::string format_expr(const FtfExpr& e, FormatMode mode) {
    const FtfExpr shown = mode == FormatMode::Canonical ? canonicalize(e) : e;
    if (shown.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < shown.size(); ++i) {
        if (i > 0) out += " + ";
        out += format_term(shown.terms()[i], mode == FormatMode::Canonical ? FormatMode::Raw : mode);
    }
    return out;
}

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    FtfExpr parse() {
        skip_space();
        if (at_end()) throw error("empty expression");
        std::vector<Term> terms;
        if (peek_literal('0')) {
            advance();
            expect_end();
            return FtfExpr();
        }
        terms.push_back(parse_term());
        while (true) {
            skip_space();
            if (at_end()) break;
            if (text_[pos_] != '+') throw error(std::string("unexpected '") + text_[pos_] + "'");
            advance();
            terms.push_back(parse_term());
        }
        return FtfExpr(std::move(terms));
    }

private:
    Term parse_term() {
        skip_space();
        Term t;
        if (peek_literal('1')) {
            advance();
            return t;
        }
        t.atoms.push_back(parse_atom());
        while (true) {
            skip_space();
            if (at_end() || text_[pos_] != '*') break;
            advance();
            t.atoms.push_back(parse_atom());
        }
        return t;
    }

    Atom parse_atom() {
        skip_space();
        if (at_end()) throw error("expected an identifier");
        std::size_t start = pos_;
        auto c = static_cast<unsigned char>(text_[pos_]);
        if (!(std::isalpha(c) || c == '_')) throw error(std::string("expected an identifier, found '") + text_[pos_] + "'");
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) advance();
        std::string name(text_.substr(start, pos_ - start));
        skip_space();
        if (at_end() || text_[pos_] != '^') return Atom::var(std::move(name));
        advance();
        skip_space();
        std::size_t num_start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        unsigned count = 0;
        auto digits = text_.substr(num_start, pos_ - num_start);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), count);
        if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
            col_ -= pos_ - num_start;
            pos_ = num_start;
            throw error("call count must be a non-negative integer");
        }
        return Atom::call(std::move(name), count);
    }

    // A lone '0' or '1' token (not the start of a longer number).
    bool peek_literal(char c) const {
        if (at_end() || text_[pos_] != c) return false;
        std::size_t next = pos_ + 1;
        return next >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[next]));
    }

    void expect_end() {
        skip_space();
        if (!at_end()) throw error("unexpected text after '0'");
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    bool at_end() const { return pos_ >= text_.size(); }

    ParseError error(const std::string& msg) const { return ParseError(msg, line_, col_); }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

}  // namespace

FtfExpr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

}  // namespace fuzzchain

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fuzzchain/chains.hpp"
#include "fuzzchain/check.hpp"
#include "fuzzchain/closure.hpp"
#include "fuzzchain/error.hpp"
#include "fuzzchain/expr.hpp"
#include "fuzzchain/fixtures.hpp"
#include "fuzzchain/recursion.hpp"
#include "fuzzchain/system.hpp"

namespace fuzzchain::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Config {
    bool fixtures = false;
    std::vector<std::string> files;
    std::string phi_counts;
    std::optional<unsigned> rec_count;
    std::string system;
    std::vector<std::string> bindings;
    std::string assignment_file;
    std::string mode;
    bool simplify = false;
    bool json = false;
    bool resolve = false;
    std::string expr;
    unsigned k = 0;
    std::optional<std::uint64_t> seed;
    std::size_t trials = 500;
};

class UsageError : public Error {
public:
    using Error::Error;
};

/// A ParseError prefixed with the file it came from.
class FileParseError : public Error {
public:
    FileParseError(const std::string& file, const ParseError& e) : Error(file + ":" + e.what()) {}
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::array<unsigned, 5> parse_counts(const std::string& text) {
    std::array<unsigned, 5> out{};
    std::stringstream ss(text);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i == out.size()) throw UsageError("--phi-counts takes five comma-separated counts");
        try {
            std::size_t used = 0;
            unsigned long v = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out[i++] = static_cast<unsigned>(v);
        } catch (const std::logic_error&) {
            throw UsageError("invalid count '" + item + "' in --phi-counts");
        }
    }
    if (i != out.size()) throw UsageError("--phi-counts takes five comma-separated counts");
    return out;
}

SystemRegistry load_registry(const Config& cfg) {
    if (!cfg.fixtures && cfg.files.empty()) throw UsageError("no systems given: use --fixtures and/or --file");
    SystemRegistry registry;
    auto merge = [&](const SystemRegistry& more) {
        for (const auto& s : more.systems()) registry.add(s);
    };
    if (cfg.fixtures) {
        FixtureOptions opts;
        if (!cfg.phi_counts.empty()) opts.phi_counts = parse_counts(cfg.phi_counts);
        if (cfg.rec_count) opts.rec_count = *cfg.rec_count;
        merge(builtin_fixtures(opts));
    }
    for (const auto& f : cfg.files) {
        try {
            merge(parse_registry(read_file(f)));
        } catch (const ParseError& e) {
            throw FileParseError(f, e);
        }
    }
    return registry;
}

// Registry plus the diagnostics gate every command goes through.
SystemRegistry checked_registry(const Config& cfg, std::ostream& err) {
    SystemRegistry r = load_registry(cfg);
    auto diags = validate_registry(r);
    for (const auto& d : diags) {
        if (d.severity == Diagnostic::Severity::Warning) err << to_string(d) << '\n';
    }
    if (has_errors(diags)) {
        std::string msg;
        for (const auto& d : diags) {
            if (d.severity == Diagnostic::Severity::Error) msg += (msg.empty() ? "" : "\n") + to_string(d);
        }
        throw ValidationError(msg);
    }
    return r;
}

Assignment load_assignment(const Config& cfg) {
    Assignment a;
    if (!cfg.assignment_file.empty()) {
        try {
            a = parse_assignment(read_file(cfg.assignment_file));
        } catch (const ParseError& e) {
            throw FileParseError(cfg.assignment_file, e);
        }
    }
    for (const auto& b : cfg.bindings) {
        auto [name, value] = parse_binding(b);
        a.set(name, value);
    }
    return a;
}

FormatMode parse_mode(const std::string& mode) {
    if (mode == "raw") return FormatMode::Raw;
    if (mode == "paper") return FormatMode::Paper;
    return FormatMode::Canonical;
}

Json terms_json(const FtfExpr& e) {
    Json terms = Json::array();
    for (const Term& t : e.terms()) {
        Json atoms = Json::array();
        for (const Atom& a : t.atoms) atoms.push_back(a.to_string());
        terms.push_back(std::move(atoms));
    }
    return terms;
}

Json matrix_json(const NumericMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m.at(i, j).value());
        rows.push_back(std::move(row));
    }
    return rows;
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// Shown expression for ftf/expand. Simplify keeps the first raw spelling of
// every term that survives absorption.
std::string show(const FtfExpr& raw, FormatMode mode, bool simplify, FtfExpr* shown) {
    FtfExpr e = raw;
    if (simplify) {
        FtfExpr kept = canonicalize(raw, Simplify::Yes);
        std::vector<Term> terms;
        std::vector<std::vector<Atom>> seen;
        for (const Term& t : raw.terms()) {
            auto key = canonical_term(t).atoms;
            if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
            bool survives = std::any_of(kept.terms().begin(), kept.terms().end(),
                                        [&](const Term& k) { return k.atoms == key; });
            if (!survives) continue;
            seen.push_back(key);
            terms.push_back(t);
        }
        e = FtfExpr(std::move(terms));
    }
    if (mode == FormatMode::Canonical) e = canonicalize(e);
    if (shown != nullptr) *shown = e;
    return format_expr(e, mode);
}

int cmd_ftf(const Config& cfg, std::ostream& out, std::ostream& err) {
    SystemRegistry r = checked_registry(cfg, err);
    const FuzzySystem& s = r.at(cfg.system);
    FtfExpr shown;
    std::string text = show(derive_ftf_raw(s), parse_mode(cfg.mode), cfg.simplify, &shown);
    if (cfg.json) {
        emit_json(out, Json{{"system", s.name()}, {"mode", cfg.mode}, {"simplified", cfg.simplify}, {"ftf", text},
                            {"terms", terms_json(shown)}});
    } else {
        out << text << '\n';
    }
    return kOk;
}

int cmd_matrix(const Config& cfg, std::ostream& out, std::ostream& err) {
    SystemRegistry r = checked_registry(cfg, err);
    const FuzzySystem& s = r.at(cfg.system);
    if (cfg.resolve) {
        NumericMatrix m = resolve_matrix(r, s, load_assignment(cfg));
        if (cfg.json) {
            emit_json(out, Json{{"system", s.name()}, {"vertices", s.vertices()}, {"matrix", matrix_json(m)}});
        } else {
            out << render_matrix(m);
        }
        return kOk;
    }
    ConnectionMatrix m = connection_matrix(s);
    if (cfg.json) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < m.size(); ++i) {
            Json row = Json::array();
            for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_string(m.at(i, j)));
            rows.push_back(std::move(row));
        }
        emit_json(out, Json{{"system", s.name()}, {"vertices", s.vertices()}, {"matrix", rows}});
    } else {
        out << render_matrix(m);
    }
    return kOk;
}

int cmd_eval(const Config& cfg, std::ostream& out, std::ostream& err) {
    SystemRegistry r = checked_registry(cfg, err);
    const FuzzySystem& s = r.at(cfg.system);
    Membership v = eval_system(r, s.name(), load_assignment(cfg));
    if (cfg.json) {
        emit_json(out, Json{{"system", s.name()}, {"value", v.value()}});
    } else {
        out << format_membership(v) << '\n';
    }
    return kOk;
}

int cmd_closure(const Config& cfg, std::ostream& out, std::ostream& err) {
    SystemRegistry r = checked_registry(cfg, err);
    const FuzzySystem& s = r.at(cfg.system);
    NumericMatrix closed = warshall_closure(resolve_matrix(r, s, load_assignment(cfg)));
    Membership t = closed.at(s.input(), s.output());
    const std::string& in = s.vertices()[s.input()];
    const std::string& outv = s.vertices()[s.output()];
    if (cfg.json) {
        emit_json(out, Json{{"system", s.name()},
                            {"vertices", s.vertices()},
                            {"closure", matrix_json(closed)},
                            {"input", in},
                            {"output", outv},
                            {"transmission", t.value()}});
    } else {
        out << render_matrix(closed) << "transmission " << in << " -> " << outv << ": " << format_membership(t)
            << '\n';
    }
    return kOk;
}

const char* kind_name(TraceEvent::Kind k) {
    switch (k) {
        case TraceEvent::Kind::Enter: return "enter";
        case TraceEvent::Kind::PushReturn: return "push";
        case TraceEvent::Kind::PopReturn: return "pop";
        case TraceEvent::Kind::BranchResult: return "branch";
        case TraceEvent::Kind::Exit: return "exit";
    }
    return "?";
}

int cmd_trace(const Config& cfg, std::ostream& out, std::ostream& err) {
    SystemRegistry r = checked_registry(cfg, err);
    const FuzzySystem& s = r.at(cfg.system);
    auto [value, trace] = trace_eval(r, s.name(), load_assignment(cfg));
    if (!cfg.json) {
        out << trace.render();
        return kOk;
    }
    Json events = Json::array();
    for (const auto& e : trace.events()) {
        Json j{{"kind", kind_name(e.kind)}, {"depth", e.depth}};
        switch (e.kind) {
            case TraceEvent::Kind::Enter:
                j["system"] = e.system;
                j["budget"] = e.budget.to_string();
                break;
            case TraceEvent::Kind::PushReturn:
            case TraceEvent::Kind::PopReturn:
                j["return"] = e.label;
                break;
            case TraceEvent::Kind::BranchResult:
                j["chain"] = e.chain;
                j["expr"] = e.expr;
                j["value"] = e.value.value();
                break;
            case TraceEvent::Kind::Exit:
                j["system"] = e.system;
                j["value"] = e.value.value();
                break;
        }
        events.push_back(std::move(j));
    }
    emit_json(out, Json{{"system", s.name()}, {"value", value.value()}, {"events", events}});
    return kOk;
}

int cmd_expand(const Config& cfg, std::ostream& out, std::ostream& err) {
    SystemRegistry r = checked_registry(cfg, err);
    const FuzzySystem& s = r.at(cfg.system);
    auto tree = expansion_tree(r, s.name());
    FormatMode mode = parse_mode(cfg.mode);
    std::string text;
    FtfExpr shown;
    if (mode == FormatMode::Raw && !cfg.simplify) {
        text = render_expansion(*tree);
        shown = flatten(*tree);
    } else {
        text = show(flatten(*tree), mode, cfg.simplify, &shown);
    }
    if (cfg.json) {
        emit_json(out, Json{{"system", s.name()}, {"mode", cfg.mode}, {"simplified", cfg.simplify}, {"expansion", text},
                            {"terms", terms_json(shown)}});
    } else {
        out << text << '\n';
    }
    return kOk;
}

std::string composition_text(const std::vector<unsigned>& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

int cmd_power(const Config& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.k == 0) throw UsageError("--k must be at least 1");
    FtfExpr base;
    if (!cfg.expr.empty()) {
        base = parse_expr(cfg.expr);
    } else if (!cfg.system.empty()) {
        SystemRegistry r = checked_registry(cfg, err);
        base = derive_ftf_raw(r.at(cfg.system));
    } else {
        throw UsageError("power needs --expr or --system");
    }
    for (const Term& t : base.terms()) {
        for (const Atom& a : t.atoms) {
            if (a.is_call()) throw UsageError("power works on call-free expressions; '" + a.to_string() + "' is a call");
        }
    }
    FtfExpr powered = expr_power(base, cfg.k);
    auto entries = multinomial_expand(base, cfg.k);
    std::optional<Membership> value;
    if (!cfg.bindings.empty() || !cfg.assignment_file.empty()) value = eval_expr(powered, load_assignment(cfg));

    if (cfg.json) {
        Json list = Json::array();
        for (const auto& e : entries) {
            list.push_back(Json{{"composition", e.composition},
                                {"coefficient", e.coefficient.str()},
                                {"term", format_term(e.term, FormatMode::Paper)}});
        }
        Json j{{"base", format_expr(base, FormatMode::Paper)},
               {"k", cfg.k},
               {"power", format_expr(canonicalize(powered), FormatMode::Paper)},
               {"entries", list}};
        if (value) j["value"] = value->value();
        emit_json(out, j);
        return kOk;
    }
    out << "base: " << format_expr(base, FormatMode::Paper) << '\n';
    out << "power " << cfg.k << ": " << format_expr(canonicalize(powered), FormatMode::Paper) << '\n';
    out << "multinomial expansion (" << entries.size() << " compositions):\n";
    for (const auto& e : entries) {
        out << "  " << composition_text(e.composition) << "  coefficient " << e.coefficient.str() << "  "
            << format_term(e.term, FormatMode::Paper) << '\n';
    }
    if (value) out << "value: " << format_membership(*value) << '\n';
    return kOk;
}

int cmd_check(const Config& cfg, std::ostream& out, std::ostream& err) {
    std::uint64_t seed = 42;
    if (cfg.seed) {
        seed = *cfg.seed;
    } else if (const char* env = std::getenv("FUZZCHAIN_SEED")) {
        try {
            seed = std::stoull(env);
        } catch (const std::logic_error&) {
            throw UsageError(std::string("FUZZCHAIN_SEED is not an integer: ") + env);
        }
    }
    auto results = run_all_checks(seed, cfg.trials);
    bool all = std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.ok(); });
    if (cfg.json) {
        Json suites = Json::array();
        for (const auto& r : results) suites.push_back(Json{{"name", r.name}, {"passed", r.passed}, {"total", r.total}});
        emit_json(out, Json{{"seed", seed}, {"trials", cfg.trials}, {"suites", suites}, {"ok", all}});
    } else {
        out << "seed " << seed << ", " << cfg.trials << " trials\n";
        for (const auto& r : results) out << r.name << ": " << r.passed << "/" << r.total << '\n';
        out << (all ? "all suites passed" : "DISAGREEMENT") << '\n';
    }
    for (const auto& r : results) {
        for (const auto& f : r.failures) err << "failure in " << r.name << ":\n" << f << '\n';
    }
    return all ? kOk : kDisagreement;
}

int cmd_fixtures(const Config& cfg, std::ostream& out, std::ostream&) {
    FixtureOptions opts;
    if (!cfg.phi_counts.empty()) opts.phi_counts = parse_counts(cfg.phi_counts);
    if (cfg.rec_count) opts.rec_count = *cfg.rec_count;
    SystemRegistry r = builtin_fixtures(opts);
    if (!cfg.json) {
        out << format_registry(r);
        return kOk;
    }
    Json systems = Json::array();
    for (const auto& s : r.systems()) {
        Json edges = Json::array();
        for (const Edge& e : s.edges()) {
            Json label = e.label.is_var() ? Json{{"var", e.label.name()}}
                                          : Json{{"call", e.label.name()}, {"count", e.label.count()}};
            edges.push_back(Json{{"u", s.vertices()[e.u]}, {"v", s.vertices()[e.v]}, {"label", label}});
        }
        systems.push_back(Json{{"name", s.name()},
                               {"vertices", s.vertices()},
                               {"input", s.vertices()[s.input()]},
                               {"output", s.vertices()[s.output()]},
                               {"edges", edges}});
    }
    emit_json(out, Json{{"systems", systems}});
    return kOk;
}

int cmd_validate(const Config& cfg, std::ostream& out, std::ostream&) {
    SystemRegistry r = load_registry(cfg);
    auto diags = validate_registry(r);
    if (cfg.json) {
        Json list = Json::array();
        for (const auto& d : diags) {
            list.push_back(Json{{"severity", d.severity == Diagnostic::Severity::Error ? "error" : "warning"},
                                {"system", d.system},
                                {"message", d.message}});
        }
        emit_json(out, Json{{"systems", r.systems().size()}, {"diagnostics", list}});
    } else {
        for (const auto& d : diags) out << to_string(d) << '\n';
        if (diags.empty()) out << r.systems().size() << " systems, no problems\n";
    }
    return has_errors(diags) ? kInvalid : kOk;
}

void add_sources(CLI::App* sub, Config& cfg) {
    sub->add_flag("--fixtures", cfg.fixtures, "Load the built-in systems psi1..psi5, phi, psi1_rec");
    sub->add_option("--file", cfg.files, "System definition file (repeatable)")->check(CLI::ExistingFile);
    sub->add_option("--phi-counts", cfg.phi_counts, "Call counts of phi's psi1..psi5 edges, e.g. 1,1,1,1,1");
    sub->add_option("--rec-count", cfg.rec_count, "Call count on psi1_rec's recursive edge");
}

void add_bindings(CLI::App* sub, Config& cfg) {
    sub->add_option("--set", cfg.bindings, "Variable binding name=value (repeatable)");
    sub->add_option("--assign", cfg.assignment_file, "Assignment file of '<var> = <value>' lines")
        ->check(CLI::ExistingFile);
}

void add_json(CLI::App* sub, Config& cfg) { sub->add_flag("--json", cfg.json, "Structured output"); }

void add_mode(CLI::App* sub, Config& cfg) {
    sub->add_option("--mode", cfg.mode, "Display mode: raw, canonical or paper")
        ->check(CLI::IsMember({"raw", "canonical", "paper"}));
    sub->add_flag("--simplify", cfg.simplify, "Drop absorbed terms");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Deep fuzzy system transmission: symbolic FTFs, max-min evaluation and closure", "fuzzchain"};
    app.require_subcommand(1);

    auto* ftf = app.add_subcommand("ftf", "Symbolic transmission function of a system");
    auto* matrix = app.add_subcommand("matrix", "Connection matrix (symbolic, or numeric with --resolve)");
    auto* eval = app.add_subcommand("eval", "Numeric transmission by recursive evaluation");
    auto* closure = app.add_subcommand("closure", "Max-min closure of the resolved connection matrix");
    auto* trace = app.add_subcommand("trace", "Evaluation with the call stack recorded");
    auto* expand = app.add_subcommand("expand", "Calls expanded into a call-free expression");
    auto* power = app.add_subcommand("power", "k-th power of an expression and its multinomial expansion");
    auto* check = app.add_subcommand("check", "Seeded differential checks against brute-force oracles");
    auto* fixtures = app.add_subcommand("fixtures", "Print the built-in systems as a definition file");
    auto* validate = app.add_subcommand("validate", "Report problems in system definitions");

    for (auto* sub : {ftf, matrix, eval, closure, trace, expand}) {
        add_sources(sub, cfg);
        add_json(sub, cfg);
        sub->add_option("--system", cfg.system, "System name")->required();
    }
    for (auto* sub : {matrix, eval, closure, trace}) add_bindings(sub, cfg);
    add_mode(ftf, cfg);
    add_mode(expand, cfg);
    ftf->get_option("--mode")->description("Display mode: raw, canonical (default) or paper");
    expand->get_option("--mode")->description("Display mode: raw (default), canonical or paper");
    matrix->add_flag("--resolve", cfg.resolve, "Substitute variable values and evaluate calls");

    add_sources(power, cfg);
    add_bindings(power, cfg);
    add_json(power, cfg);
    power->add_option("--system", cfg.system, "Use the transmission function of this call-free system");
    power->add_option("--expr", cfg.expr, "Expression, e.g. 'x*z + y*w'");
    power->add_option("--k", cfg.k, "Exponent (>= 1)")->required();

    check->add_option("--seed", cfg.seed, "PRNG seed (default 42, or FUZZCHAIN_SEED)");
    check->add_option("--trials", cfg.trials, "Trials per randomized suite")->capture_default_str();
    add_json(check, cfg);

    fixtures->add_option("--phi-counts", cfg.phi_counts, "Call counts of phi's psi1..psi5 edges");
    fixtures->add_option("--rec-count", cfg.rec_count, "Call count on psi1_rec's recursive edge");
    add_json(fixtures, cfg);

    add_sources(validate, cfg);
    add_json(validate, cfg);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    if (cfg.mode.empty()) cfg.mode = *expand ? "raw" : "canonical";

    try {
        if (*ftf) return cmd_ftf(cfg, out, err);
        if (*matrix) return cmd_matrix(cfg, out, err);
        if (*eval) return cmd_eval(cfg, out, err);
        if (*closure) return cmd_closure(cfg, out, err);
        if (*trace) return cmd_trace(cfg, out, err);
        if (*expand) return cmd_expand(cfg, out, err);
        if (*power) return cmd_power(cfg, out, err);
        if (*check) return cmd_check(cfg, out, err);
        if (*fixtures) return cmd_fixtures(cfg, out, err);
        if (*validate) return cmd_validate(cfg, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const FileParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const BindingError& e) {
        err << "binding error: " << e.what() << '\n';
        return kInvalid;
    } catch (const ValidationError& e) {
        err << "invalid: " << e.what() << '\n';
        return kInvalid;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace fuzzchain::cli

#include "fuzzchain/system.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <tuple>

#include "fuzzchain/error.hpp"
#include "table.hpp"

namespace fuzzchain {

FuzzySystem::FuzzySystem(std::string name, std::string input, std::string output)
    : name_(std::move(name)) {
    if (!is_identifier(name_)) throw ValidationError("invalid system name '" + name_ + "'");
    if (input == output) throw ValidationError("system " + name_ + ": input and output terminal must differ");
    input_ = add_vertex(input);
    output_ = add_vertex(output);
}

FuzzySystem::FuzzySystem(std::string name, std::vector<std::string> vertices, std::string input,
                         std::string output)
    : name_(std::move(name)) {
    if (!is_identifier(name_)) throw ValidationError("invalid system name '" + name_ + "'");
    for (const auto& v : vertices) {
        if (index_of(v)) throw ValidationError("system " + name_ + ": duplicate vertex " + v);
        add_vertex(v);
    }
    fixed_ = true;
    if (input == output) throw ValidationError("system " + name_ + ": input and output terminal must differ");
    auto in = index_of(input);
    auto out = index_of(output);
    if (!in) throw ValidationError("system " + name_ + ": terminal " + input + " is not among the vertices");
    if (!out) throw ValidationError("system " + name_ + ": terminal " + output + " is not among the vertices");
    input_ = *in;
    output_ = *out;
}

std::size_t FuzzySystem::add_vertex(const std::string& name) {
    if (auto i = index_of(name)) return *i;
    if (fixed_) throw ValidationError("system " + name_ + ": unknown vertex " + name);
    if (!is_identifier(name)) throw ValidationError("system " + name_ + ": invalid vertex name '" + name + "'");
    vertices_.push_back(name);
    return vertices_.size() - 1;
}

std::size_t FuzzySystem::key(std::size_t u, std::size_t v) {
    if (u > v) std::swap(u, v);
    return (u << 32) | v;
}

void FuzzySystem::add_edge(const std::string& u, const std::string& v, Atom label) {
    if (u == v) throw ValidationError("system " + name_ + ": self-loop on " + u);
    std::size_t iu = add_vertex(u);
    std::size_t iv = add_vertex(v);
    auto [it, inserted] = edge_index_.emplace(key(iu, iv), edges_.size());
    if (!inserted) throw ValidationError("system " + name_ + ": duplicate edge " + u + " " + v);
    edges_.push_back({iu, iv, std::move(label)});
}

std::optional<std::size_t> FuzzySystem::index_of(std::string_view vertex) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), vertex);
    if (it == vertices_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

const Atom* FuzzySystem::edge(std::size_t u, std::size_t v) const {
    auto it = edge_index_.find(key(u, v));
    if (it == edge_index_.end()) return nullptr;
    return &edges_[it->second].label;
}

std::vector<std::size_t> FuzzySystem::neighbours(std::size_t v) const {
    std::vector<std::size_t> out;
    for (const Edge& e : edges_) {
        if (e.u == v) out.push_back(e.v);
        if (e.v == v) out.push_back(e.u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool FuzzySystem::operator==(const FuzzySystem& other) const {
    if (name_ != other.name_ || vertices_ != other.vertices_ || input_ != other.input_ ||
        output_ != other.output_ || edges_.size() != other.edges_.size()) {
        return false;
    }
    for (const Edge& e : edges_) {
        const Atom* a = other.edge(e.u, e.v);
        if (a == nullptr || *a != e.label) return false;
    }
    return true;
}

void SystemRegistry::add(FuzzySystem system) {
    if (find(system.name()) != nullptr) throw ValidationError("duplicate system name " + system.name());
    systems_.push_back(std::move(system));
}

const FuzzySystem* SystemRegistry::find(std::string_view name) const {
    for (const auto& s : systems_) {
        if (s.name() == name) return &s;
    }
    return nullptr;
}

const FuzzySystem& SystemRegistry::at(std::string_view name) const {
    const FuzzySystem* s = find(name);
    if (s == nullptr) throw ValidationError("unknown system '" + std::string(name) + "'");
    return *s;
}

unsigned SystemRegistry::max_declared_count() const {
    unsigned k = 0;
    for (const auto& s : systems_) {
        for (const Edge& e : s.edges()) {
            if (e.label.is_call()) k = std::max(k, e.label.count());
        }
    }
    return k;
}

// Definition file parsing.

namespace {

struct Token {
    enum class Kind { Word, LBrace, RBrace, Separator, Arrow, End };
    Kind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto word_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            out.push_back({Token::Kind::Separator, "\n", line, col});
            ++line;
            col = 1;
            ++i;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') {
                ++i;
                ++col;
            }
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++col;
        } else if (c == '{' || c == '}' || c == ';') {
            auto kind = c == '{' ? Token::Kind::LBrace : c == '}' ? Token::Kind::RBrace : Token::Kind::Separator;
            out.push_back({kind, std::string(1, c), line, col});
            ++i;
            ++col;
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({Token::Kind::Arrow, "->", line, col});
            i += 2;
            col += 2;
        } else if (word_char(c)) {
            std::size_t start = i;
            std::size_t start_col = col;
            while (i < text.size() && word_char(text[i])) {
                ++i;
                ++col;
            }
            out.push_back({Token::Kind::Word, std::string(text.substr(start, i - start)), line, start_col});
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }
    out.push_back({Token::Kind::End, "", line, col});
    return out;
}

class RegistryParser {
public:
    explicit RegistryParser(std::string_view text) : tokens_(tokenize(text)) {}

    SystemRegistry parse() {
        SystemRegistry registry;
        while (true) {
            skip_separators();
            if (peek().kind == Token::Kind::End) break;
            const Token& kw = next();
            if (kw.kind != Token::Kind::Word || kw.text != "system") throw error(kw, "expected 'system'");
            const Token& name = word("system name");
            if (!is_identifier(name.text)) throw error(name, "invalid system name '" + name.text + "'");
            skip_separators();
            expect(Token::Kind::LBrace, "'{'");
            FuzzySystem system = parse_body(name.text);
            if (registry.find(system.name()) != nullptr) throw error(name, "duplicate system name " + name.text);
            registry.add(std::move(system));
        }
        return registry;
    }

private:
    template <typename F>
    auto build(const Token& at, F&& f) {
        try {
            return f();
        } catch (const ValidationError& e) {
            throw error(at, e.what());
        }
    }

    FuzzySystem parse_body(const std::string& name) {
        std::optional<FuzzySystem> system;
        std::optional<std::vector<std::string>> vertices;
        while (true) {
            skip_separators();
            const Token& t = next();
            if (t.kind == Token::Kind::RBrace) break;
            if (t.kind != Token::Kind::Word) throw error(t, "expected a clause or '}'");
            if (t.text == "vertices") {
                if (system || vertices) throw error(t, "'vertices' must come first and only once");
                vertices.emplace();
                while (peek().kind == Token::Kind::Word) vertices->push_back(identifier("vertex").text);
                if (vertices->empty()) throw error(peek(), "expected vertex names");
            } else if (t.text == "terminals") {
                if (system) throw error(t, "duplicate 'terminals' clause");
                const Token& in = identifier("input terminal");
                expect(Token::Kind::Arrow, "'->'");
                const Token& out = identifier("output terminal");
                system = build(t, [&] {
                    if (vertices) return FuzzySystem(name, *vertices, in.text, out.text);
                    return FuzzySystem(name, in.text, out.text);
                });
            } else if (t.text == "edge") {
                if (!system) throw error(t, "'terminals' must precede edges");
                const Token& u = identifier("vertex");
                const Token& v = identifier("vertex");
                Atom label = parse_label();
                build(u, [&] {
                    system->add_edge(u.text, v.text, label);
                    return 0;
                });
            } else {
                throw error(t, "unknown clause '" + t.text + "'");
            }
            end_clause();
        }
        if (!system) throw error(previous(), "system " + name + " has no 'terminals' clause");
        return std::move(*system);
    }

    Atom parse_label() {
        const Token& t = identifier("edge label");
        if (t.text == "call" && peek().kind == Token::Kind::Word) {
            const Token& target = identifier("call target");
            const Token& count = word("call count");
            unsigned k = 0;
            auto [ptr, ec] = std::from_chars(count.text.data(), count.text.data() + count.text.size(), k);
            if (ec != std::errc() || ptr != count.text.data() + count.text.size()) {
                throw error(count, "call count must be a non-negative integer");
            }
            return Atom::call(target.text, k);
        }
        return Atom::var(t.text);
    }

    void end_clause() {
        auto k = peek().kind;
        if (k == Token::Kind::Separator) {
            next();
        } else if (k != Token::Kind::RBrace) {
            throw error(peek(), "expected end of clause, found '" + peek().text + "'");
        }
    }

    const Token& identifier(const char* what) {
        const Token& t = word(what);
        if (!is_identifier(t.text)) throw error(t, std::string("invalid ") + what + " '" + t.text + "'");
        return t;
    }

    const Token& word(const char* what) {
        const Token& t = next();
        if (t.kind != Token::Kind::Word) throw error(t, std::string("expected ") + what);
        return t;
    }

    void expect(Token::Kind kind, const char* what) {
        const Token& t = next();
        if (t.kind != kind) throw error(t, std::string("expected ") + what);
    }

    void skip_separators() {
        while (peek().kind == Token::Kind::Separator) next();
    }

    const Token& peek() const { return tokens_[pos_]; }
    const Token& previous() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }
    const Token& next() {
        const Token& t = tokens_[pos_];
        if (t.kind != Token::Kind::End) ++pos_;
        return t;
    }

    static ParseError error(const Token& t, const std::string& msg) { return ParseError(msg, t.line, t.column); }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

std::string label_text(const Atom& a) {
    if (a.is_var()) return a.name();
    return "call " + a.name() + " " + std::to_string(a.count());
}

}  // namespace

SystemRegistry parse_registry(std::string_view text) { return RegistryParser(text).parse(); }

std::string format_registry(const SystemRegistry& registry) {
    std::ostringstream out;
    bool first = true;
    for (const auto& s : registry.systems()) {
        if (!first) out << '\n';
        first = false;
        out << "system " << s.name() << " {\n";
        out << "  vertices";
        for (const auto& v : s.vertices()) out << ' ' << v;
        out << '\n';
        out << "  terminals " << s.vertices()[s.input()] << " -> " << s.vertices()[s.output()] << '\n';
        for (const Edge& e : s.edges()) {
            out << "  edge " << s.vertices()[e.u] << ' ' << s.vertices()[e.v] << ' ' << label_text(e.label) << '\n';
        }
        out << "}\n";
    }
    return out.str();
}

std::string to_string(const Diagnostic& d) {
    return std::string(d.severity == Diagnostic::Severity::Error ? "error" : "warning") + ": " + d.system + ": " +
           d.message;
}

std::vector<Diagnostic> validate_registry(const SystemRegistry& registry) {
    std::vector<Diagnostic> out;
    for (const auto& s : registry.systems()) {
        for (const Edge& e : s.edges()) {
            if (e.label.is_call() && registry.find(e.label.name()) == nullptr) {
                out.push_back({Diagnostic::Severity::Error, s.name(),
                               "unknown call target '" + e.label.name() + "' on edge " + s.vertices()[e.u] + " " +
                                   s.vertices()[e.v]});
            }
        }
        if (s.input() == s.output() || s.input() >= s.vertex_count() || s.output() >= s.vertex_count()) {
            out.push_back({Diagnostic::Severity::Error, s.name(), "invalid terminals"});
            continue;
        }
        for (std::size_t t : {s.input(), s.output()}) {
            if (s.neighbours(t).empty()) {
                out.push_back({Diagnostic::Severity::Warning, s.name(),
                               "disconnected terminal " + s.vertices()[t] + " (transmission is 0)"});
            }
        }
    }
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

std::string to_string(const SymbolicCell& cell) {
    if (std::holds_alternative<ZeroCell>(cell)) return "0";
    if (std::holds_alternative<OneCell>(cell)) return "1";
    return std::get<Atom>(cell).to_string();
}

ConnectionMatrix::ConnectionMatrix(std::vector<std::string> vertices)
    : vertices_(std::move(vertices)), cells_(vertices_.size() * vertices_.size(), ZeroCell{}) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) set(i, i, OneCell{});
}

ConnectionMatrix connection_matrix(const FuzzySystem& system) {
    ConnectionMatrix m(system.vertices());
    for (const Edge& e : system.edges()) {
        m.set(e.u, e.v, e.label);
        m.set(e.v, e.u, e.label);
    }
    return m;
}

std::string render_matrix(const ConnectionMatrix& m) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::vector<std::string> row;
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return detail::render_table(m.vertices(), rows);
}

std::string detail::render_table(const std::vector<std::string>& names, const std::vector<std::vector<std::string>>& rows) {
    std::size_t label_w = 0;
    std::size_t cell_w = 0;
    for (const auto& n : names) {
        label_w = std::max(label_w, n.size());
        cell_w = std::max(cell_w, n.size());
    }
    for (const auto& r : rows) {
        for (const auto& c : r) cell_w = std::max(cell_w, c.size());
    }
    auto emit_row = [&](std::ostringstream& out, const std::string& label, const std::vector<std::string>& cells) {
        std::string line = label + std::string(label_w - label.size(), ' ');
        for (const auto& c : cells) line += "  " + c + std::string(cell_w - c.size(), ' ');
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    };
    std::ostringstream out;
    emit_row(out, "", names);
    for (std::size_t i = 0; i < rows.size(); ++i) emit_row(out, names[i], rows[i]);
    return out.str();
}

}  // namespace fuzzchain

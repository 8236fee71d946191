#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "fuzzchain/expr.hpp"

namespace fuzzchain {

struct Edge {
    std::size_t u;
    std::size_t v;
    Atom label;
};

/// Two-terminal undirected graph whose edges carry variables or calls.
class FuzzySystem {
public:
    FuzzySystem(std::string name, std::string input, std::string output);
    /// Fixed vertex order; terminals must be among the vertices.
    FuzzySystem(std::string name, std::vector<std::string> vertices, std::string input, std::string output);

    /// Adds the vertex if unknown and returns its index.
    std::size_t add_vertex(const std::string& name);
    /// Throws ValidationError on self-loops, parallel edges or unknown vertices
    /// when the vertex order is fixed.
    void add_edge(const std::string& u, const std::string& v, Atom label);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& vertices() const { return vertices_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t input() const { return input_; }
    std::size_t output() const { return output_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool fixed_vertices() const { return fixed_; }

    std::optional<std::size_t> index_of(std::string_view vertex) const;
    const Atom* edge(std::size_t u, std::size_t v) const;

    /// Neighbour indices in ascending vertex order.
    std::vector<std::size_t> neighbours(std::size_t v) const;

    bool operator==(const FuzzySystem& other) const;

private:
    static std::size_t key(std::size_t u, std::size_t v);

    std::string name_;
    std::vector<std::string> vertices_;
    std::size_t input_ = 0;
    std::size_t output_ = 0;
    bool fixed_ = false;
    std::vector<Edge> edges_;
    std::unordered_map<std::size_t, std::size_t> edge_index_;
};

/// Named systems in declaration order. Call targets are resolved lazily.
class SystemRegistry {
public:
    /// Throws ValidationError on a duplicate name.
    void add(FuzzySystem system);

    const FuzzySystem* find(std::string_view name) const;
    /// Throws ValidationError("unknown system ...").
    const FuzzySystem& at(std::string_view name) const;

    const std::vector<FuzzySystem>& systems() const { return systems_; }
    bool empty() const { return systems_.empty(); }

    /// Largest declared call count over all call edges; 0 without calls.
    unsigned max_declared_count() const;

    bool operator==(const SystemRegistry& other) const { return systems_ == other.systems_; }

private:
    std::vector<FuzzySystem> systems_;
};

/// Definition format, line oriented, '#' comments, ';' or newline between clauses:
///
///   system psi1 {
///     vertices A B C D          # optional; otherwise first-seen order
///     terminals A -> B
///     edge A C y
///     edge C D call psi1 2
///   }
SystemRegistry parse_registry(std::string_view text);
std::string format_registry(const SystemRegistry& registry);

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity;
    std::string system;
    std::string message;
};

std::string to_string(const Diagnostic& d);

/// Unknown call targets and bad terminals are errors; a terminal without any
/// incident edge is a warning (its transmission is 0).
std::vector<Diagnostic> validate_registry(const SystemRegistry& registry);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

struct ZeroCell {
    bool operator==(const ZeroCell&) const = default;
};
struct OneCell {
    bool operator==(const OneCell&) const = default;
};
using SymbolicCell = std::variant<ZeroCell, OneCell, Atom>;

std::string to_string(const SymbolicCell& cell);

/// Square symmetric matrix of edge labels with a unit diagonal.
class ConnectionMatrix {
public:
    ConnectionMatrix(std::vector<std::string> vertices);

    std::size_t size() const { return vertices_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const SymbolicCell& at(std::size_t i, std::size_t j) const { return cells_[i * size() + j]; }
    void set(std::size_t i, std::size_t j, SymbolicCell cell) { cells_[i * size() + j] = std::move(cell); }

    bool operator==(const ConnectionMatrix&) const = default;

private:
    std::vector<std::string> vertices_;
    std::vector<SymbolicCell> cells_;
};

ConnectionMatrix connection_matrix(const FuzzySystem& system);

/// Header row of vertex names, then one row per vertex; columns left-aligned.
std::string render_matrix(const ConnectionMatrix& m);

}  // namespace fuzzchain

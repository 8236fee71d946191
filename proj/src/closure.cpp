#include "fuzzchain/closure.hpp"

#include "fuzzchain/error.hpp"
#include "fuzzchain/recursion.hpp"
#include "fuzzchain/system.hpp"
#include "table.hpp"

namespace fuzzchain {

NumericMatrix::NumericMatrix(std::size_t n) : n_(n), cells_(n * n, Membership::zero()) {}

NumericMatrix::NumericMatrix(std::vector<std::string> names) : NumericMatrix(names.size()) {
    names_ = std::move(names);
}

NumericMatrix NumericMatrix::identity(std::size_t n) {
    NumericMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Membership::one());
    return m;
}

NumericMatrix NumericMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    NumericMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw DomainError("matrix rows must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) m.set(i, j, Membership(rows[i][j]));
    }
    return m;
}

std::vector<std::string> NumericMatrix::names() const {
    if (names_.size() == n_) return names_;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n_; ++i) out.push_back(std::to_string(i));
    return out;
}

void NumericMatrix::set_names(std::vector<std::string> names) {
    if (names.size() != n_) throw DomainError("expected " + std::to_string(n_) + " names");
    names_ = std::move(names);
}

bool NumericMatrix::is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (at(i, j) != at(j, i)) return false;
        }
    }
    return true;
}

bool NumericMatrix::has_unit_diagonal() const {
    for (std::size_t i = 0; i < n_; ++i) {
        if (at(i, i) != Membership::one()) return false;
    }
    return true;
}

NumericMatrix maxmin_matmul(const NumericMatrix& a, const NumericMatrix& b) {
    if (a.size() != b.size()) {
        throw DomainError("dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    const std::size_t n = a.size();
    NumericMatrix out(a.names());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Membership best = Membership::zero();
            for (std::size_t t = 0; t < n; ++t) best = snorm_max(best, tnorm_min(a.at(i, t), b.at(t, j)));
            out.set(i, j, best);
        }
    }
    return out;
}

NumericMatrix matrix_power(const NumericMatrix& m, unsigned p) {
    if (p == 0) throw DomainError("matrix power must be at least 1");
    NumericMatrix acc = m;
    for (unsigned i = 1; i < p; ++i) acc = maxmin_matmul(acc, m);
    return acc;
}

NumericMatrix warshall_closure(NumericMatrix m, const PivotObserver& observer) {
    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const Membership ik = m.at(i, k);
            if (ik == Membership::zero()) continue;
            for (std::size_t j = 0; j < n; ++j) m.set(i, j, snorm_max(m.at(i, j), tnorm_min(ik, m.at(k, j))));
        }
        if (observer) observer(k, m);
    }
    return m;
}

// Call entries are resolved before the pivot loops rather than inside them:
// a call's value depends only on the registry and the assignment, never on the
// partially closed matrix, so any placement yields the same closure.
NumericMatrix resolve_matrix(const SystemRegistry& registry, const FuzzySystem& system, const Assignment& assignment) {
    Evaluator evaluator(registry, assignment);
    NumericMatrix m(system.vertices());
    for (std::size_t i = 0; i < m.size(); ++i) m.set(i, i, Membership::one());
    for (const Edge& e : system.edges()) {
        Membership v = evaluator.atom_value(e.label, CallBudget::unbounded());
        m.set(e.u, e.v, v);
        m.set(e.v, e.u, v);
    }
    return m;
}

Membership transmission(const SystemRegistry& registry, const std::string& name, const Assignment& assignment) {
    const FuzzySystem& system = registry.at(name);
    return warshall_closure(resolve_matrix(registry, system, assignment)).at(system.input(), system.output());
}

std::string render_matrix(const NumericMatrix& m) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::vector<std::string> row;
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(format_membership(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return detail::render_table(m.names(), rows);
}

}  // namespace fuzzchain

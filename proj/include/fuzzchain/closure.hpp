#pragma once

// Numeric max-min matrix algebra: products, powers and Warshall closure.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "fuzzchain/membership.hpp"

namespace fuzzchain {

class SystemRegistry;
class FuzzySystem;
class Assignment;

class NumericMatrix {
public:
    NumericMatrix() = default;
    /// n x n zero matrix.
    explicit NumericMatrix(std::size_t n);
    /// Zero matrix labelled by vertex names.
    explicit NumericMatrix(std::vector<std::string> names);

    /// Unit diagonal, zero elsewhere.
    static NumericMatrix identity(std::size_t n);
    /// Row-major values; throws DomainError unless rows are square and in [0,1].
    static NumericMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const { return n_; }
    Membership at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, Membership m) { cells_[i * n_ + j] = m; }

    /// Vertex names; "0", "1", ... when unnamed.
    std::vector<std::string> names() const;
    void set_names(std::vector<std::string> names);

    bool is_symmetric() const;
    bool has_unit_diagonal() const;

    // Values only; names are presentation.
    bool operator==(const NumericMatrix& other) const { return n_ == other.n_ && cells_ == other.cells_; }

private:
    std::size_t n_ = 0;
    std::vector<Membership> cells_;
    std::vector<std::string> names_;
};

/// (a*b)(i,j) = max_t min(a(i,t), b(t,j)). Throws DomainError on size mismatch.
NumericMatrix maxmin_matmul(const NumericMatrix& a, const NumericMatrix& b);

/// p-fold product; p >= 1.
NumericMatrix matrix_power(const NumericMatrix& m, unsigned p);

/// Called after pivot k has been processed, with the matrix at that point.
using PivotObserver = std::function<void(std::size_t pivot, const NumericMatrix& current)>;

/// for k, i, j: m(i,j) = max(m(i,j), min(m(i,k), m(k,j))).
NumericMatrix warshall_closure(NumericMatrix m, const PivotObserver& observer = {});

/// Symbolic connection matrix with variables bound from the assignment and each
/// call replaced by the value of the called system at the call's count.
NumericMatrix resolve_matrix(const SystemRegistry& registry, const FuzzySystem& system, const Assignment& assignment);

/// closure(resolve_matrix)(input, output).
Membership transmission(const SystemRegistry& registry, const std::string& name, const Assignment& assignment);

std::string render_matrix(const NumericMatrix& m);

}  // namespace fuzzchain

#pragma once

// Seeded differential suites: every engine result against its oracle, with
// exact equality.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fuzzchain {

struct SuiteResult {
    std::string name;
    std::size_t passed = 0;
    std::size_t total = 0;
    /// First few failing instances, human readable.
    std::vector<std::string> failures;

    bool ok() const { return passed == total; }
    void record(bool pass, const std::string& what);
};

/// canonicalize (both modes) preserves eval_expr: trials expressions x 10 assignments.
SuiteResult check_canonical(std::uint64_t seed, std::size_t trials);

/// derive_ftf + eval_expr == eval_system == path oracle on call-free systems.
SuiteResult check_ftf_triangle(std::uint64_t seed, std::size_t trials);

/// Random deep registries: eval_system == transmission == path oracle on the
/// resolved graph == unrolling interpreter.
SuiteResult check_deep_triangle(std::uint64_t seed, std::size_t trials);

/// Random reflexive symmetric matrices (n <= 8): closure == simple-path oracle on
/// every entry == matrix_power(m, n-1); closure idempotent, symmetric, unit diagonal, monotone.
SuiteResult check_closure(std::uint64_t seed, std::size_t trials);

/// Random call-free expressions x 10 assignments, k in {2,3}: power, plain and
/// oracle evaluation agree, as does the multinomial expansion.
SuiteResult check_power(std::uint64_t seed, std::size_t trials);

/// Multinomial coefficients against k!/prod(n_i!) for every composition with k <= 4.
SuiteResult check_multinomial_coefficients();

/// Budget monotonicity (k <= 6), stabilisation at 1 + K_max and self-call collapse.
SuiteResult check_recursion_laws(std::uint64_t seed, std::size_t trials);

/// After every pivot K the closure equals the best path with intermediates <= K.
SuiteResult check_loop_invariant(std::uint64_t seed, std::size_t trials);

/// eval_expr(symbolic_expand) == eval_system and trace value == eval_system.
SuiteResult check_expansion_and_trace(std::uint64_t seed, std::size_t trials);

/// Simple chains lose nothing against walks of length <= 2n.
SuiteResult check_walk_reduction(std::uint64_t seed, std::size_t trials);

/// best_chain_value == closure == directed sequence oracle on random chain spaces.
SuiteResult check_chain_space(std::uint64_t seed, std::size_t trials);

/// Every suite above, in a fixed order.
std::vector<SuiteResult> run_all_checks(std::uint64_t seed, std::size_t trials);

}  // namespace fuzzchain

#pragma once

#include <array>
#include <string>

#include "fuzzchain/system.hpp"

namespace fuzzchain {

struct FixtureOptions {
    /// Call counts of phi's psi1..psi5 edges.
    std::array<unsigned, 5> phi_counts{1, 1, 1, 1, 1};
    /// Count on psi1_rec's recursive C-D edge.
    unsigned rec_count = 2;
};

/// Definition text for psi1..psi5, phi and psi1_rec.
std::string fixtures_text(const FixtureOptions& options = {});

SystemRegistry builtin_fixtures(const FixtureOptions& options = {});

}  // namespace fuzzchain

#pragma once

#include <string>
#include <vector>

namespace fuzzchain::detail {

/// Header row of names, then one labelled row per name; cells padded to a common width.
std::string render_table(const std::vector<std::string>& names, const std::vector<std::vector<std::string>>& rows);

}  // namespace fuzzchain::detail

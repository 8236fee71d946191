#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuzzchain::cli {

/// Exit codes.
enum Exit : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kInvalid = 3,
    kDisagreement = 4,
};

/// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzchain::cli

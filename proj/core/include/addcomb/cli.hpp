#pragma once

#include <string>
#include <vector>

namespace addcomb {

/// Exit codes: 0 success (and every verified proven bound holds), 1 a proven
/// bound is violated, 2 usage or hypothesis error, 3 parse error.
struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// Runs one invocation; args excludes argv[0]. All output is deterministic
/// byte-for-byte for fixed inputs and flags.
CliResult run_cli(const std::vector<std::string>& args);

} // namespace addcomb

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ottofridge::cli {

enum ExitCode : int {
    kSuccess = 0,
    kOracleFailure = 1,
    kConfigError = 2,
    kIoError = 3,
    kUnconverged = 4,
};

/// Entry point of the `ottofridge` executable. args[0] is the program name.
/// Reports go to `out` (unless --out redirects them), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ottofridge::cli

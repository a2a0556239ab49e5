#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asymnet::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kMissingInput = 2,
    kConfigError = 3,
    kEmptyDomain = 4,
};

/// Runs the command line `args` (args[0] is the program name). Artifacts go
/// to files, diagnostics to `err`, --help/--version text to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

} // namespace asymnet::cli

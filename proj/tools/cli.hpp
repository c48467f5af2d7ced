#ifndef ONERING_TOOLS_CLI_HPP
#define ONERING_TOOLS_CLI_HPP

#include <iosfwd>

namespace onering::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_input_error = 2,
    exit_capacity = 3,
};

/// Runs the `onering` command line (build, verify, bench, stats).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace onering::cli

#endif

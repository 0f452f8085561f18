#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sparse_asm::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_input_error = 1,
    exit_mismatch = 2,
};

/// Runs one command line (argv[0] is the program name). Normal output goes
/// to `out`, diagnostics and timing to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sparse_asm::cli

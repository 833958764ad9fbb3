#pragma once

#include <iosfwd>

namespace peg {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,             // success, Win, true
    exit_false = 1,          // Lose, false, violation found
    exit_usage = 2,          // usage or I/O error
    exit_resource = 3,       // resource limit or budget exceeded
};

/// Runs the command-line tool. "-" as a file argument reads from in.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace peg

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rydgate {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInvalid = 2, kExitNumerical = 3 };

/// Runs one subcommand (modes, fc, dress, interactions, gate, evolve).
/// `args` excludes the program name. Results go to `out` unless an output
/// path is configured; warnings and errors go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rydgate

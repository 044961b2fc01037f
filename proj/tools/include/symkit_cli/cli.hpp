#pragma once

#include <string>
#include <vector>

namespace symkit_cli {

/// Result of driving the command-line front end in-process.
struct CliResult {
    int exit_code = 0;
    std::string output;  // exactly what the binary prints on stdout (no trailing newline)
};

/// Parse and execute one command.  `args` is argv without the program name.
///
/// Exit codes: 0 on success, 1 when verify-reduction ran to completion but
/// some trial failed (the report is still printed), 2 on any error, in which
/// case the output is a machine-readable {"error": {"code", "message"}}
/// object whose code is the stable error class name (ParseError, SchemaError,
/// DimensionCap, SolverFail, ...).
CliResult run(const std::vector<std::string>& args);

}  // namespace symkit_cli

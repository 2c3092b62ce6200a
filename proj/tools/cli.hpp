#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nonrn::cli {

enum ExitCode { kOk = 0, kDomainError = 1, kMalformed = 2 };

// Runs one subcommand. args excludes the program name. Results go to `out`
// (or to the --out file), diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nonrn::cli

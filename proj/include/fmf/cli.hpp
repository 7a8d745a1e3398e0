#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fmf::cli {

enum ExitCode : int { ok = 0, invalid = 1, usage = 2, io = 3 };

/// Runs one command line (without the program name). Data goes to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fmf::cli

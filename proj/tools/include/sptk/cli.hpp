#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sptk::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kIo = 3 };

/// Runs one command line (without the program name). Reports go to `out`
/// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sptk::cli

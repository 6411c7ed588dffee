#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace agrisim::cli {

enum ExitCode { kOk = 0, kValidation = 1, kRuntime = 2 };

// Runs one command line (args excludes the program name). Normal output goes
// to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace agrisim::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tomo::cli {

// Runs one command line (without the program name). Reports go to out,
// diagnostics and log lines to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tomo::cli

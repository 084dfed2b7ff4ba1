#pragma once

#include <string>
#include <vector>

namespace hfda::cli {

/// Runs one command line (args[0] is the program name). Returns the exit code.
int run(const std::vector<std::string>& args);

} // namespace hfda::cli

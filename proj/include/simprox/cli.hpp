#pragma once

#include <string>
#include <vector>

namespace simprox {

// Command-line driver. args are the words after the program name. Returns
// the process exit code: 0 pass, 1 fail, 2 inconclusive, 64 usage or input
// errors. Reports print to stdout as JSON; diagnostics go to stderr.
int run_cli(const std::vector<std::string>& args);

}  // namespace simprox

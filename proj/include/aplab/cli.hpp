#pragma once

#include <string>
#include <vector>

namespace aplab {

// Parses and runs one subcommand.  Returns the process exit status:
//   0  success
//   1  assertion failure (a checked inequality or scan found a violation)
//   2  usage error (unknown command, parameter outside its precondition)
// Configuration precedence: flags > APL_-prefixed environment variables >
// built-in defaults.
int run_cli(const std::vector<std::string>& args);

} // namespace aplab

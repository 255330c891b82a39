#ifndef HSBD_CLI_HPP
#define HSBD_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace hsbd {

// Runs one CLI command (argv without the program name). Exit codes:
// 0 success (including Undecided verdicts), 1 usage/parse error,
// 2 semantic/validation error, 3 enumeration guard tripped.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hsbd

#endif

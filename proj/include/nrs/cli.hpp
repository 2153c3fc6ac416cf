#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nrs {

/// Runs the command-line front end.  `args` excludes the program name.
/// Exit codes: 0 success, 1 check failure, 2 usage error.
int cli_run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace nrs

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace leighton {

// Runs one command line (without the program name). Exit codes: 0 success or
// true, 1 negative result, 2 input error, 3 internal verification failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace leighton

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace typika::cli {

/// Runs the command line (without the program name). Returns the exit status:
/// 0 entailed / consistent, 1 not entailed / inconsistent, 2 error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace typika::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nspmr {

/// Command-line entry point. `args` excludes the program name. Exit codes:
/// 0 success (run: goal reached), 1 usage or input error, 2 run ended without
/// reaching the goal.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nspmr

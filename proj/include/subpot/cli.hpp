#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace subpot::cli {

/// Entry point of the `subpot` tool. `args` excludes the program name.
/// Exit codes: 0 success; 1 failed verification case or |z| > 3;
/// 2 usage or parameter error; 3 numerical or infrastructure error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subpot::cli

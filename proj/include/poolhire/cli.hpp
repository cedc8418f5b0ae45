#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace poolhire {

/// Entry point of the poolhire tool. `args` excludes the program name.
/// Exit codes: 0 success or property holds, 1 violation or nothing found,
/// 2 invalid input or budget exceeded.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace poolhire

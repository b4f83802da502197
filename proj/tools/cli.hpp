#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tropdiv::cli {

// argv without the program name. JSON goes to out, the human summary to err.
// Exit codes: 0 success, 1 domain error, 2 validation error.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace tropdiv::cli

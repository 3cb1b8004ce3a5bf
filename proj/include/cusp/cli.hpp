#pragma once

#include <string>
#include <vector>

namespace cusp {

// Full command-line front end; returns the process exit code
// (0 pass, 1 violations found, 2 usage or precondition error).
int run_command(const std::vector<std::string>& args);

} // namespace cusp

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fraclab {

// Exit codes: 0 success, 2 usage error, 3 numerical non-convergence.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fraclab

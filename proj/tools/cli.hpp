#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hmf {

// Exit codes: 0 ok, 1 failed verification, 2 schema, 3 domain, 4 budget.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hmf

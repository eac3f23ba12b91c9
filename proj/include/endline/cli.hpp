#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace endline {

/// Exit codes: 0 ok, 1 error or failed check, 2 degenerate verdict.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace endline

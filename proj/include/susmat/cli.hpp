#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace susmat {

// Runs the command-line tool on the given arguments (without argv[0]).
// Exit codes: 0 all pass, 1-125 failure count, 64 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace susmat

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpw {

// Runs the lpw command line; `args` excludes the program name.
// Exit codes: 0 accepted or found, 1 rejected or not found, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpw

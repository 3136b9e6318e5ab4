#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace modcont {

// Dispatches the CLI subcommands.  Exit status: 0 success, 1 verification
// failure, 2 usage error, 3 numeric error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modcont

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pursuit {

// Runs one command. `args` excludes the program name. Returns the process exit
// code: 0 solved, 2 when `solve --expect` disagrees with the winner, 1 on any
// error or on an oracle-check disagreement.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pursuit

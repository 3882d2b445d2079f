#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace s2g::cli {

/// Entry point of the sparql2gremlin command. `args` excludes the program
/// name. Returns the process exit code: 0 success, 1 input or translation
/// error, 2 engine/oracle mismatch.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace s2g::cli

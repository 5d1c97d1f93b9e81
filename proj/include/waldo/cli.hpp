#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace waldo::cli {

// args excludes the program name. Exit codes: 0 success, 1 module error or
// failed check, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace waldo::cli

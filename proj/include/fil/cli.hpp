// fil :: command-line driver entry point
#pragma once

#include <string>
#include <vector>

namespace fil::cli {

// argv without the program name. Returns the process exit code:
// 0 success, 1 logical failure (rejection / budget exhausted), 2 input error.
int run(const std::vector<std::string>& args);

}  // namespace fil::cli

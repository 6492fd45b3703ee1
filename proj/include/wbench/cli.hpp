#pragma once

// Command-line surface. run() is the whole program behind main(), callable
// in-process so tests can drive the binary paths deterministically.

#include <string>
#include <vector>

namespace wbench {

inline constexpr const char* kVersion = "0.1.0";

// args exclude the program name. Exit codes: 0 success, 1 failed --strict
// gate or stability check, 2 usage or configuration error.
int run(const std::vector<std::string>& args);

} // namespace wbench

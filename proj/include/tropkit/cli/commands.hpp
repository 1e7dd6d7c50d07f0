#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tropkit::cli {

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_false = 1;
inline constexpr int exit_input = 2;
inline constexpr int exit_certificate = 3;

// Runs one command line (without the program name). Results go to `out`,
// diagnostics for humans to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tropkit::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quizboard {

// Runs the `quizboard` command line; args exclude the program name.
// Exit codes: 0 success, 1 domain error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quizboard
